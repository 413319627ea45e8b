/* tslint:disable */
/* eslint-disable */

/**
 * Heatmap, hot spots and tour for `points`, a JSON array of
 * `[x_m, y_m, weight]` triples in the demo frame.
 */
export function heatmap(points: string, bandwidth_m: number, cell_m: number, percentile: number): string;

/**
 * Valuation of the published mean expert scores as one attraction.
 */
export function published_ftv(m: number, big_m: number, clamp: boolean, method: string): string;

/**
 * Fuzzy rescaling of one score: input and output triangles with their
 * alpha-cuts at `alpha`.
 */
export function rescale(lo: number, mode: number, hi: number, x: number, y: number, m: number, big_m: number, alpha: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly heatmap: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly published_ftv: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly rescale: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
