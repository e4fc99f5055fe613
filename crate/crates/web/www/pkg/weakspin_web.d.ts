/* tslint:disable */
/* eslint-disable */

/**
 * First-order and exact detector densities for one setting, z in µm.
 */
export class Profiles {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly displacement_um: number;
    readonly exact: Float64Array;
    readonly first_order: Float64Array;
    readonly mean_exact_um: number;
    readonly mean_first_order_um: number;
    readonly post_selection_probability: number;
    readonly z_um: Float64Array;
}

/**
 * Exact vs first-order mean displacement over L, plus the calibrated crossover.
 */
export class Scan {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly deviation: Float64Array;
    readonly exact_um: Float64Array;
    readonly first_order_um: Float64Array;
    readonly limits: Float64Array;
    readonly max_limit: number;
}

/**
 * Weak value over φ ∈ [0, 2π] at fixed θ.
 */
export class WeakCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly im: Float64Array;
    readonly phi: Float64Array;
    readonly re: Float64Array;
}

export function detector_profiles(theta: number, phi: number, limit: number, velocity: number, sigma_um: number, points: number): Profiles;

export function limit_scan(theta: number, tolerance: number): Scan;

export function weak_curves(theta: number, steps: number): WeakCurves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_profiles_free: (a: number, b: number) => void;
    readonly __wbg_scan_free: (a: number, b: number) => void;
    readonly __wbg_weakcurves_free: (a: number, b: number) => void;
    readonly detector_profiles: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly limit_scan: (a: number, b: number) => [number, number, number];
    readonly profiles_displacement_um: (a: number) => number;
    readonly profiles_exact: (a: number) => [number, number];
    readonly profiles_first_order: (a: number) => [number, number];
    readonly profiles_mean_exact_um: (a: number) => number;
    readonly profiles_mean_first_order_um: (a: number) => number;
    readonly profiles_post_selection_probability: (a: number) => number;
    readonly profiles_z_um: (a: number) => [number, number];
    readonly scan_deviation: (a: number) => [number, number];
    readonly scan_exact_um: (a: number) => [number, number];
    readonly scan_first_order_um: (a: number) => [number, number];
    readonly scan_limits: (a: number) => [number, number];
    readonly weak_curves: (a: number, b: number) => [number, number, number];
    readonly weakcurves_im: (a: number) => [number, number];
    readonly weakcurves_phi: (a: number) => [number, number];
    readonly weakcurves_re: (a: number) => [number, number];
    readonly scan_max_limit: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
