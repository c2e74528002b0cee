/* tslint:disable */
/* eslint-disable */

/**
 * ISI histograms of one uniform scene under two noise models.
 */
export class IsiComparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    baseline(): Float64Array;
    baseline_iqr(): number;
    baseline_rate(): number;
    /**
     * Total-variation distance, `NaN` when either histogram is empty.
     */
    distance(): number;
    /**
     * Normalised frequencies of ISI `1..=max_isi` under the full model.
     */
    full(): Float64Array;
    full_iqr(): number;
    full_rate(): number;
    ideal_rate(): number;
    /**
     * Largest ISI with a nonzero count in either histogram.
     */
    max_isi(): number;
}

/**
 * A translating random texture and its simulated spike stream.
 */
export class MovingScene {
    free(): void;
    [Symbol.dispose](): void;
    frames(): number;
    height(): number;
    /**
     * RGBA pixels of the input luminance at frame `t`.
     */
    luminance(t: number): Uint8Array;
    constructor(seed: bigint, vx: number, vy: number, frames: number, noisy: boolean);
    /**
     * RGBA pixels of spike frame `t`: white where a pixel fired.
     */
    spikes(t: number): Uint8Array;
    /**
     * RGBA TFI reconstruction at frame `t`, stretched to full range.
     */
    tfi(t: number): Uint8Array;
    /**
     * RGBA TFP reconstruction around frame `t`, stretched to full range.
     */
    tfp(t: number, window: number): Uint8Array;
    total_spikes(): number;
    width(): number;
}

/**
 * Simulate `scenes` uniform scenes on a small sensor with fixed-pattern noise,
 * calibrate, and return a plain-text comparison of true and estimated values.
 */
export function calibration_demo(seed: bigint, scenes: number, frames: number): string;

/**
 * Simulate a `SIDE x SIDE` uniform scene at `gray` (0..=255) under the full
 * noise model and under dark current plus shot noise alone.
 */
export function compare_isi(gray: number, frames: number, seed: bigint): IsiComparison;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_isicomparison_free: (a: number, b: number) => void;
    readonly __wbg_movingscene_free: (a: number, b: number) => void;
    readonly calibration_demo: (a: bigint, b: number, c: number) => [number, number, number, number];
    readonly compare_isi: (a: number, b: number, c: bigint) => [number, number, number];
    readonly isicomparison_baseline: (a: number) => [number, number];
    readonly isicomparison_baseline_iqr: (a: number) => number;
    readonly isicomparison_baseline_rate: (a: number) => number;
    readonly isicomparison_distance: (a: number) => number;
    readonly isicomparison_full: (a: number) => [number, number];
    readonly isicomparison_full_iqr: (a: number) => number;
    readonly isicomparison_full_rate: (a: number) => number;
    readonly isicomparison_ideal_rate: (a: number) => number;
    readonly isicomparison_max_isi: (a: number) => number;
    readonly movingscene_frames: (a: number) => number;
    readonly movingscene_height: (a: number) => number;
    readonly movingscene_luminance: (a: number, b: number) => [number, number];
    readonly movingscene_new: (a: bigint, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly movingscene_spikes: (a: number, b: number) => [number, number];
    readonly movingscene_tfi: (a: number, b: number) => [number, number];
    readonly movingscene_tfp: (a: number, b: number, c: number) => [number, number, number, number];
    readonly movingscene_total_spikes: (a: number) => number;
    readonly movingscene_width: (a: number) => number;
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
