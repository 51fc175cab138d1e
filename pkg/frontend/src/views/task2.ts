/** Task 2: image beside its saliency superimposition, with hover weight
 * readout, colormap/category selectors, and a color bar. */

import { ApiClient, Category, ColormapInfo, ImageInfo, debounce } from '../api.js';
import { Task2Controller } from '../controllers.js';
import { imageHitToPixel, rgbCss } from '../format.js';
import { ViewState } from '../state.js';

export interface Task2Deps {
    api: ApiClient;
    categories: Category[];
    colormaps: ColormapInfo[];
    images: ImageInfo[];
    state: ViewState;
    onStateChange: (state: ViewState) => void;
    onError: (message: string) => void;
}

export function drawColorBar(canvas: HTMLCanvasElement, cm: ColormapInfo): void {
    const ctx = canvas.getContext('2d');
    if (!ctx) return;
    const w = canvas.width;
    const h = canvas.height;
    for (let i = 0; i < w; i++) {
        const idx = Math.min(255, Math.floor((i / w) * 256));
        ctx.fillStyle = rgbCss(cm.lut[idx]);
        ctx.fillRect(i, 0, 1, h - 12);
    }
    ctx.fillStyle = '#333';
    ctx.font = '10px sans-serif';
    const ticks = cm.kind === 'categorical' && cm.bins ? cm.bins : 5;
    for (let k = 0; k <= ticks; k++) {
        const frac = k / ticks;
        const x = Math.min(w - 1, Math.round(frac * w));
        ctx.textAlign = k === 0 ? 'left' : k === ticks ? 'right' : 'center';
        ctx.fillText(frac.toFixed(cm.kind === 'categorical' ? 3 : 1).replace(/0+$/, '').replace(/\.$/, ''), x, h - 2);
    }
}

export function renderTask2(root: HTMLElement, deps: Task2Deps): void {
    const { api, colormaps, images } = deps;
    let state = deps.state;

    const withWeights = images.filter((im) => im.weight_categories.length > 0);
    if (withWeights.length === 0) {
        root.innerHTML = '<p class="empty">no images with weight fields in this dataset</p>';
        return;
    }
    const image =
        withWeights.find((im) => im.image_id === state.task2Image) ?? withWeights[0];
    const weightCats = image.weight_categories;
    const category =
        state.task2Category !== null && weightCats.includes(state.task2Category)
            ? state.task2Category
            : weightCats.includes('road')
              ? 'road'
              : weightCats[0];

    root.innerHTML = `
      <div class="toolbar">
        <label>image <select id="t2-image"></select></label>
        <label>category <select id="t2-category"></select></label>
        <label>colormap <select id="t2-colormap"></select></label>
        <label>&alpha;1 <input id="t2-a1" type="number" min="0.05" max="1" step="0.05"></label>
        <label>&alpha;2 <input id="t2-a2" type="number" min="0" max="0.95" step="0.05"></label>
      </div>
      <div class="pair">
        <figure><img id="t2-photo" alt="image"><figcaption>image</figcaption></figure>
        <figure class="hover-target">
          <img id="t2-composite" alt="saliency superimposition">
          <div id="t2-readout" class="readout" hidden></div>
          <figcaption>saliency superimposition (hover for weights)</figcaption>
        </figure>
      </div>
      <canvas id="t2-colorbar" width="420" height="34"></canvas>`;

    const imageSelect = root.querySelector<HTMLSelectElement>('#t2-image')!;
    for (const im of withWeights) {
        const opt = document.createElement('option');
        opt.value = im.image_id;
        opt.textContent = im.image_id;
        imageSelect.appendChild(opt);
    }
    imageSelect.value = image.image_id;

    const categorySelect = root.querySelector<HTMLSelectElement>('#t2-category')!;
    for (const name of weightCats) {
        const opt = document.createElement('option');
        opt.value = name;
        opt.textContent = name;
        categorySelect.appendChild(opt);
    }
    categorySelect.value = category;

    const colormapSelect = root.querySelector<HTMLSelectElement>('#t2-colormap')!;
    for (const cm of colormaps) {
        const opt = document.createElement('option');
        opt.value = cm.name;
        opt.textContent = cm.name;
        colormapSelect.appendChild(opt);
    }
    colormapSelect.value = colormaps.some((cm) => cm.name === state.task2Colormap)
        ? state.task2Colormap
        : colormaps[0].name;

    const a1Input = root.querySelector<HTMLInputElement>('#t2-a1')!;
    const a2Input = root.querySelector<HTMLInputElement>('#t2-a2')!;
    a1Input.value = String(state.alpha1);
    a2Input.value = String(state.alpha2);

    const photo = root.querySelector<HTMLImageElement>('#t2-photo')!;
    const composite = root.querySelector<HTMLImageElement>('#t2-composite')!;
    const readout = root.querySelector<HTMLElement>('#t2-readout')!;
    const colorbar = root.querySelector<HTMLCanvasElement>('#t2-colorbar')!;

    const controller = new Task2Controller(
        api,
        () => {
            if (controller.readout === null || controller.hover === null) {
                readout.hidden = true;
                return;
            }
            readout.hidden = false;
            readout.textContent = `w = ${controller.readout}`;
        },
        deps.onError,
    );

    const apply = () => {
        state = {
            ...state,
            task2Image: imageSelect.value,
            task2Category: categorySelect.value,
            task2Colormap: colormapSelect.value,
            alpha1: Number(a1Input.value),
            alpha2: Number(a2Input.value),
        };
        deps.onStateChange(state);
        photo.src = api.photoUrl(imageSelect.value);
        composite.src = api.compositeUrl(imageSelect.value, {
            category: categorySelect.value,
            colormap: colormapSelect.value,
            alpha1: Number(a1Input.value),
            alpha2: Number(a2Input.value),
        });
        const cm = colormaps.find((c) => c.name === colormapSelect.value)!;
        drawColorBar(colorbar, cm);
    };

    imageSelect.addEventListener('change', () => renderTask2(root, { ...deps, state: { ...state, task2Image: imageSelect.value, task2Category: null } }));
    categorySelect.addEventListener('change', apply);
    colormapSelect.addEventListener('change', apply);
    a1Input.addEventListener('change', apply);
    a2Input.addEventListener('change', apply);

    const hover = debounce((offsetX: number, offsetY: number) => {
        const pixel = imageHitToPixel(
            offsetX,
            offsetY,
            composite.clientWidth,
            composite.clientHeight,
            image.width,
            image.height,
        );
        void controller.hoverAt(imageSelect.value, categorySelect.value, pixel);
    }, 50);
    composite.addEventListener('mousemove', (e) => hover(e.offsetX, e.offsetY));
    composite.addEventListener('mouseleave', () =>
        void controller.hoverAt(imageSelect.value, categorySelect.value, null),
    );

    apply();
}
