/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curve_free: (a: number, b: number) => void;
export const __wbg_lgicurve_free: (a: number, b: number) => void;
export const __wbg_oraclecomparison_free: (a: number, b: number) => void;
export const amplitude: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const curve_x: (a: number) => [number, number];
export const curve_y: (a: number) => [number, number];
export const lgi: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const lgicurve_argmax: (a: number) => number;
export const lgicurve_bound: (a: number) => number;
export const lgicurve_intervals: (a: number) => [number, number];
export const lgicurve_max: (a: number) => number;
export const lgicurve_tau: (a: number) => [number, number];
export const lgicurve_witness: (a: number) => [number, number];
export const oracleCheck: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const oraclecomparison_analytic: (a: number) => [number, number];
export const oraclecomparison_maxError: (a: number) => number;
export const oraclecomparison_oracle: (a: number) => [number, number];
export const oraclecomparison_t: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
