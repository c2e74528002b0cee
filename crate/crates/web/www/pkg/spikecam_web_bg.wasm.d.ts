/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_isicomparison_free: (a: number, b: number) => void;
export const __wbg_movingscene_free: (a: number, b: number) => void;
export const calibration_demo: (a: bigint, b: number, c: number) => [number, number, number, number];
export const compare_isi: (a: number, b: number, c: bigint) => [number, number, number];
export const isicomparison_baseline: (a: number) => [number, number];
export const isicomparison_baseline_iqr: (a: number) => number;
export const isicomparison_baseline_rate: (a: number) => number;
export const isicomparison_distance: (a: number) => number;
export const isicomparison_full: (a: number) => [number, number];
export const isicomparison_full_iqr: (a: number) => number;
export const isicomparison_full_rate: (a: number) => number;
export const isicomparison_ideal_rate: (a: number) => number;
export const isicomparison_max_isi: (a: number) => number;
export const movingscene_frames: (a: number) => number;
export const movingscene_height: (a: number) => number;
export const movingscene_luminance: (a: number, b: number) => [number, number];
export const movingscene_new: (a: bigint, b: number, c: number, d: number, e: number) => [number, number, number];
export const movingscene_spikes: (a: number, b: number) => [number, number];
export const movingscene_tfi: (a: number, b: number) => [number, number];
export const movingscene_tfp: (a: number, b: number, c: number) => [number, number, number, number];
export const movingscene_total_spikes: (a: number) => number;
export const movingscene_width: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
