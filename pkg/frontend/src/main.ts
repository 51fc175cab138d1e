/** App bootstrap: load registries, restore state from the URL, route tasks. */

import { ApiClient, Category, ColormapInfo, ImageInfo, resolveApiBase } from './api.js';
import { ViewState, decodeState, encodeState, sanitizeState } from './state.js';
import { renderTask1 } from './views/task1.js';
import { renderTask2 } from './views/task2.js';
import { renderTask3 } from './views/task3.js';

interface Registries {
    categories: Category[];
    colormaps: ColormapInfo[];
    images: ImageInfo[];
}

function syncUrl(state: ViewState): void {
    const q = new URLSearchParams(encodeState(state));
    const api = new URLSearchParams(location.search).get('api');
    if (api) q.set('api', api);
    history.replaceState(null, '', `${location.pathname}?${q.toString()}`);
}

function showError(message: string): void {
    const banner = document.getElementById('banner');
    if (!banner) return;
    banner.textContent = message;
    banner.hidden = false;
    setTimeout(() => {
        banner.hidden = true;
    }, 6000);
}

function render(root: HTMLElement, api: ApiClient, registries: Registries, state: ViewState): void {
    syncUrl(state);
    for (const id of [1, 2, 3]) {
        document.getElementById(`tab-${id}`)?.classList.toggle('active', state.task === id);
    }
    const deps = {
        api,
        categories: registries.categories,
        colormaps: registries.colormaps,
        images: registries.images,
        state,
        onStateChange: (next: ViewState) => {
            state = next;
            syncUrl(next);
        },
        onError: showError,
    };
    if (state.task === 1) renderTask1(root, deps);
    else if (state.task === 2) renderTask2(root, deps);
    else renderTask3(root, deps);
}

async function boot(): Promise<void> {
    const api = new ApiClient(resolveApiBase(location.search));
    const root = document.getElementById('view')!;
    let registries: Registries;
    try {
        const [categories, colormaps, images] = await Promise.all([
            api.categories(),
            api.colormaps(),
            api.images(),
        ]);
        registries = { categories, colormaps, images };
    } catch (err) {
        showError(`cannot reach the API: ${String(err)} (set ?api=http://host:port)`);
        return;
    }

    let state = sanitizeState(
        decodeState(location.search),
        registries.categories.map((c) => c.name),
        registries.colormaps.map((c) => c.name),
        registries.images.map((im) => im.image_id),
    );

    for (const id of [1, 2, 3] as const) {
        document.getElementById(`tab-${id}`)?.addEventListener('click', () => {
            state = { ...state, task: id };
            render(root, api, registries, state);
        });
    }
    render(root, api, registries, state);
}

void boot();
