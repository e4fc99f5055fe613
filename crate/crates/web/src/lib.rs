//! Browser bindings for the weakspin demo page (`www/index.html`).
//!
//! Every exported function wraps a plain Rust function of the same name in
//! [`demo`], which is what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo;

fn js_err(e: weakspin::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Weak value over φ ∈ [0, 2π] at fixed θ.
#[wasm_bindgen]
pub struct WeakCurves {
    phi: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[wasm_bindgen]
impl WeakCurves {
    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn re(&self) -> Vec<f64> {
        self.re.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn im(&self) -> Vec<f64> {
        self.im.clone()
    }
}

#[wasm_bindgen]
pub fn weak_curves(theta: f64, steps: usize) -> Result<WeakCurves, JsError> {
    let c = demo::weak_curves(theta, steps).map_err(js_err)?;
    Ok(WeakCurves {
        phi: c.phi,
        re: c.re,
        im: c.im,
    })
}

/// First-order and exact detector densities for one setting, z in µm.
#[wasm_bindgen]
pub struct Profiles {
    inner: demo::Profiles,
}

#[wasm_bindgen]
impl Profiles {
    #[wasm_bindgen(getter)]
    pub fn z_um(&self) -> Vec<f64> {
        self.inner.z_um.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn first_order(&self) -> Vec<f64> {
        self.inner.first_order.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.inner.exact.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn mean_first_order_um(&self) -> f64 {
        self.inner.mean_first_order_um
    }
    #[wasm_bindgen(getter)]
    pub fn mean_exact_um(&self) -> f64 {
        self.inner.mean_exact_um
    }
    #[wasm_bindgen(getter)]
    pub fn displacement_um(&self) -> f64 {
        self.inner.displacement_um
    }
    #[wasm_bindgen(getter)]
    pub fn post_selection_probability(&self) -> f64 {
        self.inner.post_selection_probability
    }
}

#[wasm_bindgen]
pub fn detector_profiles(
    theta: f64,
    phi: f64,
    limit: f64,
    velocity: f64,
    sigma_um: f64,
    points: usize,
) -> Result<Profiles, JsError> {
    let inner =
        demo::detector_profiles(theta, phi, limit, velocity, sigma_um, points).map_err(js_err)?;
    Ok(Profiles { inner })
}

/// Exact vs first-order mean displacement over L, plus the calibrated crossover.
#[wasm_bindgen]
pub struct Scan {
    inner: demo::Scan,
}

#[wasm_bindgen]
impl Scan {
    #[wasm_bindgen(getter)]
    pub fn limits(&self) -> Vec<f64> {
        self.inner.limits.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn exact_um(&self) -> Vec<f64> {
        self.inner.exact_um.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn first_order_um(&self) -> Vec<f64> {
        self.inner.first_order_um.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn deviation(&self) -> Vec<f64> {
        self.inner.deviation.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn max_limit(&self) -> f64 {
        self.inner.max_limit
    }
}

#[wasm_bindgen]
pub fn limit_scan(theta: f64, tolerance: f64) -> Result<Scan, JsError> {
    let inner = demo::limit_scan(theta, tolerance).map_err(js_err)?;
    Ok(Scan { inner })
}
