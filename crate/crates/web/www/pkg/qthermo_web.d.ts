/* tslint:disable */
/* eslint-disable */

/**
 * Exact-mode Otto cycle with its path in the (ω, p_excited) plane.
 */
export function otto_cycle(tc: number, th: number, wc: number, wh: number): string;

/**
 * Closed-form relaxation of the excited population and of the relative
 * entropy to the Gibbs state.
 */
export function relaxation_curve(omega: number, temp: number, gamma: number, p0: number, duration: number, points: number): string;

/**
 * Two-point-measurement work distribution of a linear gap ramp
 * (`duration = 0` is a sudden quench) with a fixed transverse field.
 */
export function work_distribution(beta: number, wi: number, wf: number, delta: number, duration: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly otto_cycle: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly relaxation_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly work_distribution: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
