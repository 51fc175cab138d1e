/** Typed client for the /api/v1 contract. */

export interface Category {
    id: number;
    name: string;
    color: [number, number, number];
}

export interface ColormapInfo {
    name: string;
    kind: 'sequential' | 'categorical';
    bins: number | null;
    lut: [number, number, number][];
}

export interface ImageInfo {
    image_id: string;
    width: number;
    height: number;
    weight_categories: string[];
}

export interface SeriesPayload {
    category: string;
    category_id: number;
    x_meaning: string;
    y_meaning: string;
    points: [number, number][];
}

export interface OccupancyRecordPayload {
    image_id: string;
    category: string;
    category_id: number;
    given_occupancy_pct: number;
    pred_occupancy_pct: number;
    iou_percent: number;
}

export interface ScatterPoint {
    category: string;
    x: number;
    y: number;
}

export interface OccupancyPayload {
    records: OccupancyRecordPayload[];
    scatter: {
        given_vs_pred: ScatterPoint[];
        given_vs_iou: ScatterPoint[];
        pred_vs_iou: ScatterPoint[];
    };
}

export type FetchLike = (url: string, init?: { signal?: AbortSignal }) => Promise<Response>;

/**
 * The API base URL comes from the `api` query parameter when present,
 * otherwise the UI assumes it is served by the same origin as the API.
 */
export function resolveApiBase(search: string): string {
    const param = new URLSearchParams(search).get('api');
    if (!param) return '';
    return param.replace(/\/+$/, '');
}

export interface CompositeParams {
    category: string;
    colormap: string;
    alpha1: number;
    alpha2: number;
}

export class ApiClient {
    constructor(
        private readonly base: string,
        private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    ) {}

    url(path: string): string {
        return `${this.base}/api/v1${path}`;
    }

    compositeUrl(imageId: string, p: CompositeParams): string {
        const q = new URLSearchParams({
            category: p.category,
            colormap: p.colormap,
            alpha1: String(p.alpha1),
            alpha2: String(p.alpha2),
        });
        return this.url(`/image/${encodeURIComponent(imageId)}/composite?${q}`);
    }

    photoUrl(imageId: string): string {
        return this.url(`/image/${encodeURIComponent(imageId)}/photo`);
    }

    /** `selected` renders only those categories; an empty list renders none. */
    maskRenderUrl(imageId: string, which: 'given' | 'pred', selected: string[]): string {
        const q = new URLSearchParams({ which, selected: selected.join(',') });
        return this.url(`/image/${encodeURIComponent(imageId)}/maskrender?${q}`);
    }

    private async getJson<T>(path: string, signal?: AbortSignal): Promise<T> {
        const resp = await this.fetchFn(this.url(path), { signal });
        if (!resp.ok) {
            throw new Error(`GET ${path} failed: ${resp.status}`);
        }
        return (await resp.json()) as T;
    }

    categories(signal?: AbortSignal): Promise<Category[]> {
        return this.getJson('/categories', signal);
    }

    colormaps(signal?: AbortSignal): Promise<ColormapInfo[]> {
        return this.getJson('/colormaps', signal);
    }

    images(signal?: AbortSignal): Promise<ImageInfo[]> {
        return this.getJson('/images', signal);
    }

    scatterOverview(signal?: AbortSignal): Promise<{ series: SeriesPayload[] }> {
        return this.getJson('/scatter/overview', signal);
    }

    scatterDetail(category: string, signal?: AbortSignal): Promise<SeriesPayload> {
        return this.getJson(`/scatter/detail?category=${encodeURIComponent(category)}`, signal);
    }

    weightAt(imageId: string, category: string, x: number, y: number, signal?: AbortSignal): Promise<{ weight: number }> {
        const q = new URLSearchParams({ category, x: String(x), y: String(y) });
        return this.getJson(`/image/${encodeURIComponent(imageId)}/weight?${q}`, signal);
    }

    maskInfo(imageId: string, which: 'given' | 'pred', x: number, y: number, signal?: AbortSignal): Promise<{ category: string }> {
        const q = new URLSearchParams({ which, x: String(x), y: String(y) });
        return this.getJson(`/image/${encodeURIComponent(imageId)}/maskinfo?${q}`, signal);
    }

    occupancy(imageId: string, selected: string[], signal?: AbortSignal): Promise<OccupancyPayload> {
        const q = new URLSearchParams({ selected: selected.join(',') });
        return this.getJson(`/image/${encodeURIComponent(imageId)}/occupancy?${q}`, signal);
    }
}

/**
 * One in-flight request per view slot: starting a new request aborts the
 * previous one, so a stale response can never overwrite a newer view.
 */
export class FetchSlot {
    private controller: AbortController | null = null;

    async run<T>(job: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
        this.controller?.abort();
        const controller = new AbortController();
        this.controller = controller;
        try {
            return await job(controller.signal);
        } catch (err) {
            if (controller.signal.aborted) return null;
            throw err;
        } finally {
            if (this.controller === controller) this.controller = null;
        }
    }

    cancel(): void {
        this.controller?.abort();
        this.controller = null;
    }
}

export function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number): (...args: A) => void {
    let timer: ReturnType<typeof setTimeout> | undefined;
    return (...args: A) => {
        clearTimeout(timer);
        timer = setTimeout(() => fn(...args), ms);
    };
}
