/* tslint:disable */
/* eslint-disable */

/**
 * A sampled curve `y(x)`.
 */
export class Curve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly x: Float64Array;
    readonly y: Float64Array;
}

/**
 * Witness over the default tau grid plus its summary.
 */
export class LgiCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly argmax: number;
    readonly bound: number;
    /**
     * Violation intervals flattened as `[a0, b0, a1, b1, ...]`.
     */
    readonly intervals: Float64Array;
    readonly max: number;
    readonly tau: Float64Array;
    readonly witness: Float64Array;
}

/**
 * Oracle and analytic `|c1(t)|` side by side.
 */
export class OracleComparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly analytic: Float64Array;
    readonly maxError: number;
    readonly oracle: Float64Array;
    readonly t: Float64Array;
}

/**
 * `|G(t)|` on `points` samples of `[0, t_max]`.
 */
export function amplitude(gamma: number, lambda: number, delta: number, t_max: number, points: number): Curve;

/**
 * Witness `C3` or `C4` over `ω0 τ ∈ (0, 2π]` for the equal superposition.
 */
export function lgi(gamma: number, lambda: number, delta: number, t1: number, order: number): LgiCurve;

/**
 * Discretized-bath `c1(t)` against the closed form, qubit initially excited.
 */
export function oracleCheck(gamma: number, lambda: number, delta: number, n_modes: number, t_max: number): OracleComparison;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curve_free: (a: number, b: number) => void;
    readonly __wbg_lgicurve_free: (a: number, b: number) => void;
    readonly __wbg_oraclecomparison_free: (a: number, b: number) => void;
    readonly amplitude: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly curve_x: (a: number) => [number, number];
    readonly curve_y: (a: number) => [number, number];
    readonly lgi: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly lgicurve_argmax: (a: number) => number;
    readonly lgicurve_bound: (a: number) => number;
    readonly lgicurve_intervals: (a: number) => [number, number];
    readonly lgicurve_max: (a: number) => number;
    readonly lgicurve_tau: (a: number) => [number, number];
    readonly lgicurve_witness: (a: number) => [number, number];
    readonly oracleCheck: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly oraclecomparison_analytic: (a: number) => [number, number];
    readonly oraclecomparison_maxError: (a: number) => number;
    readonly oraclecomparison_oracle: (a: number) => [number, number];
    readonly oraclecomparison_t: (a: number) => [number, number];
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
