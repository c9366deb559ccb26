/* tslint:disable */
/* eslint-disable */

/**
 * ln-variance of the first-parameter gradient for n = 2..=n_max.
 */
export function barren_curve(n_max: number, depth: number, samples: number, local: boolean, seed: bigint): string;

/**
 * Noisy circle and its H0/H1 barcode.
 */
export function circle_persistence(n: number, noise: number, seed: bigint): string;

/**
 * Pairwise-fidelity histogram of a random layered circuit against Haar.
 */
export function expressibility_histogram(n_qubits: number, depth: number, pairs: number, bins: number, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly barren_curve: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number, number];
    readonly circle_persistence: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly expressibility_histogram: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number, number];
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
