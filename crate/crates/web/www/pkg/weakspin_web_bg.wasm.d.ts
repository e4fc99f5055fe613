/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_profiles_free: (a: number, b: number) => void;
export const __wbg_scan_free: (a: number, b: number) => void;
export const __wbg_weakcurves_free: (a: number, b: number) => void;
export const detector_profiles: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const limit_scan: (a: number, b: number) => [number, number, number];
export const profiles_displacement_um: (a: number) => number;
export const profiles_exact: (a: number) => [number, number];
export const profiles_first_order: (a: number) => [number, number];
export const profiles_mean_exact_um: (a: number) => number;
export const profiles_mean_first_order_um: (a: number) => number;
export const profiles_post_selection_probability: (a: number) => number;
export const profiles_z_um: (a: number) => [number, number];
export const scan_deviation: (a: number) => [number, number];
export const scan_exact_um: (a: number) => [number, number];
export const scan_first_order_um: (a: number) => [number, number];
export const scan_limits: (a: number) => [number, number];
export const weak_curves: (a: number, b: number) => [number, number, number];
export const weakcurves_im: (a: number) => [number, number];
export const weakcurves_phi: (a: number) => [number, number];
export const weakcurves_re: (a: number) => [number, number];
export const scan_max_limit: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
