/* tslint:disable */
/* eslint-disable */

/**
 * Series for the two branches over `y` in the interval example, on
 * one-sided windows. `expected` is `2/n` for `y` in `(1/(n+1), 1/n)`.
 */
export function interval_series(y: number, max_exponent: number): string;

/**
 * Series for two points on the shell `level` (0 for the limit circle).
 */
export function shell_series(level: number, angle_a: number, angle_b: number, max_exponent: number): string;

/**
 * Coordinates `lo..=hi` of a Thue-Morse point, of its negation and of its
 * Toeplitz image, with the series of the pair (point, negation).
 */
export function thue_morse_strip(literal: string, lo: number, hi: number, max_exponent: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly interval_series: (a: number, b: number) => [number, number, number, number];
    readonly shell_series: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly thue_morse_strip: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
