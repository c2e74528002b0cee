/* @ts-self-types="./spikecam_web.d.ts" */

/**
 * ISI histograms of one uniform scene under two noise models.
 */
export class IsiComparison {
    static __wrap(ptr) {
        const obj = Object.create(IsiComparison.prototype);
        obj.__wbg_ptr = ptr;
        IsiComparisonFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        IsiComparisonFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_isicomparison_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    baseline() {
        const ret = wasm.isicomparison_baseline(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    baseline_iqr() {
        const ret = wasm.isicomparison_baseline_iqr(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    baseline_rate() {
        const ret = wasm.isicomparison_baseline_rate(this.__wbg_ptr);
        return ret;
    }
    /**
     * Total-variation distance, `NaN` when either histogram is empty.
     * @returns {number}
     */
    distance() {
        const ret = wasm.isicomparison_distance(this.__wbg_ptr);
        return ret;
    }
    /**
     * Normalised frequencies of ISI `1..=max_isi` under the full model.
     * @returns {Float64Array}
     */
    full() {
        const ret = wasm.isicomparison_full(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    full_iqr() {
        const ret = wasm.isicomparison_full_iqr(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    full_rate() {
        const ret = wasm.isicomparison_full_rate(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    ideal_rate() {
        const ret = wasm.isicomparison_ideal_rate(this.__wbg_ptr);
        return ret;
    }
    /**
     * Largest ISI with a nonzero count in either histogram.
     * @returns {number}
     */
    max_isi() {
        const ret = wasm.isicomparison_max_isi(this.__wbg_ptr);
        return ret >>> 0;
    }
}
if (Symbol.dispose) IsiComparison.prototype[Symbol.dispose] = IsiComparison.prototype.free;

/**
 * A translating random texture and its simulated spike stream.
 */
export class MovingScene {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        MovingSceneFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_movingscene_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    frames() {
        const ret = wasm.movingscene_frames(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    height() {
        const ret = wasm.movingscene_height(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * RGBA pixels of the input luminance at frame `t`.
     * @param {number} t
     * @returns {Uint8Array}
     */
    luminance(t) {
        const ret = wasm.movingscene_luminance(this.__wbg_ptr, t);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @param {bigint} seed
     * @param {number} vx
     * @param {number} vy
     * @param {number} frames
     * @param {boolean} noisy
     */
    constructor(seed, vx, vy, frames, noisy) {
        const ret = wasm.movingscene_new(seed, vx, vy, frames, noisy);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        this.__wbg_ptr = ret[0];
        MovingSceneFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
    /**
     * RGBA pixels of spike frame `t`: white where a pixel fired.
     * @param {number} t
     * @returns {Uint8Array}
     */
    spikes(t) {
        const ret = wasm.movingscene_spikes(this.__wbg_ptr, t);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * RGBA TFI reconstruction at frame `t`, stretched to full range.
     * @param {number} t
     * @returns {Uint8Array}
     */
    tfi(t) {
        const ret = wasm.movingscene_tfi(this.__wbg_ptr, t);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * RGBA TFP reconstruction around frame `t`, stretched to full range.
     * @param {number} t
     * @param {number} window
     * @returns {Uint8Array}
     */
    tfp(t, window) {
        const ret = wasm.movingscene_tfp(this.__wbg_ptr, t, window);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    total_spikes() {
        const ret = wasm.movingscene_total_spikes(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    width() {
        const ret = wasm.movingscene_width(this.__wbg_ptr);
        return ret >>> 0;
    }
}
if (Symbol.dispose) MovingScene.prototype[Symbol.dispose] = MovingScene.prototype.free;

/**
 * Simulate `scenes` uniform scenes on a small sensor with fixed-pattern noise,
 * calibrate, and return a plain-text comparison of true and estimated values.
 * @param {bigint} seed
 * @param {number} scenes
 * @param {number} frames
 * @returns {string}
 */
export function calibration_demo(seed, scenes, frames) {
    let deferred2_0;
    let deferred2_1;
    try {
        const ret = wasm.calibration_demo(seed, scenes, frames);
        var ptr1 = ret[0];
        var len1 = ret[1];
        if (ret[3]) {
            ptr1 = 0; len1 = 0;
            throw takeFromExternrefTable0(ret[2]);
        }
        deferred2_0 = ptr1;
        deferred2_1 = len1;
        return getStringFromWasm0(ptr1, len1);
    } finally {
        wasm.__wbindgen_free(deferred2_0, deferred2_1, 1);
    }
}

/**
 * Simulate a `SIDE x SIDE` uniform scene at `gray` (0..=255) under the full
 * noise model and under dark current plus shot noise alone.
 * @param {number} gray
 * @param {number} frames
 * @param {bigint} seed
 * @returns {IsiComparison}
 */
export function compare_isi(gray, frames, seed) {
    const ret = wasm.compare_isi(gray, frames, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return IsiComparison.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./spikecam_web_bg.js": import0,
    };
}

const IsiComparisonFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_isicomparison_free(ptr, 1));
const MovingSceneFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_movingscene_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('spikecam_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
