/** Task 3 multiform view: image, given mask, predicted mask on top;
 * category checkboxes and three occupancy/IoU scatters below. */

import { ApiClient, Category, ImageInfo, debounce } from '../api.js';
import { Palette, Task3Controller } from '../controllers.js';
import { imageHitToPixel } from '../format.js';
import { drawScatter } from '../scatter.js';
import { ViewState, effectiveSelection } from '../state.js';

export interface Task3Deps {
    api: ApiClient;
    categories: Category[];
    images: ImageInfo[];
    state: ViewState;
    onStateChange: (state: ViewState) => void;
    onError: (message: string) => void;
}

export function renderTask3(root: HTMLElement, deps: Task3Deps): void {
    const { api, categories, images } = deps;
    let state = deps.state;
    const palette: Palette = new Map(categories.map((c) => [c.name, c.color]));
    const allNames = categories.map((c) => c.name);

    if (images.length === 0) {
        root.innerHTML = '<p class="empty">empty dataset</p>';
        return;
    }
    const image = images.find((im) => im.image_id === state.task3Image) ?? images[0];

    root.innerHTML = `
      <div class="toolbar">
        <label>image <select id="t3-image"></select></label>
        <button id="t3-all">select all</button>
        <button id="t3-none">deselect all</button>
        <span id="t3-tooltip" class="readout" hidden></span>
      </div>
      <div id="t3-checkboxes" class="checkboxes"></div>
      <div class="triple">
        <figure><img id="t3-photo" alt="image"><figcaption>image</figcaption></figure>
        <figure><img id="t3-given" alt="given mask" class="hover-target"><figcaption>given mask</figcaption></figure>
        <figure><img id="t3-pred" alt="predicted mask" class="hover-target"><figcaption>predicted mask</figcaption></figure>
      </div>
      <div class="triple">
        <canvas id="t3-s1" width="330" height="260"></canvas>
        <canvas id="t3-s2" width="330" height="260"></canvas>
        <canvas id="t3-s3" width="330" height="260"></canvas>
      </div>`;

    const imageSelect = root.querySelector<HTMLSelectElement>('#t3-image')!;
    for (const im of images) {
        const opt = document.createElement('option');
        opt.value = im.image_id;
        opt.textContent = im.image_id;
        imageSelect.appendChild(opt);
    }
    imageSelect.value = image.image_id;

    const checkboxHost = root.querySelector<HTMLElement>('#t3-checkboxes')!;
    const boxes = new Map<string, HTMLInputElement>();
    const selectedNow = new Set(effectiveSelection(state, allNames));
    for (const c of categories) {
        const label = document.createElement('label');
        const box = document.createElement('input');
        box.type = 'checkbox';
        box.checked = selectedNow.has(c.name);
        const swatch = document.createElement('span');
        swatch.className = 'swatch';
        swatch.style.backgroundColor = `rgb(${c.color[0]}, ${c.color[1]}, ${c.color[2]})`;
        label.append(box, swatch, c.name);
        checkboxHost.appendChild(label);
        boxes.set(c.name, box);
    }

    const photo = root.querySelector<HTMLImageElement>('#t3-photo')!;
    const givenImg = root.querySelector<HTMLImageElement>('#t3-given')!;
    const predImg = root.querySelector<HTMLImageElement>('#t3-pred')!;
    const tooltip = root.querySelector<HTMLElement>('#t3-tooltip')!;
    const canvases = [
        root.querySelector<HTMLCanvasElement>('#t3-s1')!,
        root.querySelector<HTMLCanvasElement>('#t3-s2')!,
        root.querySelector<HTMLCanvasElement>('#t3-s3')!,
    ];

    const controller = new Task3Controller(
        api,
        () => {
            const plots = controller.scatters(palette);
            drawScatter(canvases[0], plots.givenVsPred, {
                xLabel: 'given occupancy (%)',
                yLabel: 'predicted occupancy (%)',
            });
            drawScatter(canvases[1], plots.givenVsIou, {
                xLabel: 'given occupancy (%)',
                yLabel: 'IoU (%)',
                yRange: [0, 100],
            });
            drawScatter(canvases[2], plots.predVsIou, {
                xLabel: 'predicted occupancy (%)',
                yLabel: 'IoU (%)',
                yRange: [0, 100],
            });
            if (controller.maskCategory === null) {
                tooltip.hidden = true;
            } else {
                tooltip.hidden = false;
                tooltip.textContent = `${controller.maskCategory.which}: ${controller.maskCategory.name}`;
            }
        },
        deps.onError,
    );

    const currentSelection = (): string[] => allNames.filter((name) => boxes.get(name)!.checked);

    const apply = () => {
        const selected = currentSelection();
        const allOn = selected.length === allNames.length;
        state = {
            ...state,
            task3Image: imageSelect.value,
            task3Selected: allOn ? null : selected,
        };
        deps.onStateChange(state);
        photo.src = api.photoUrl(imageSelect.value);
        givenImg.src = api.maskRenderUrl(imageSelect.value, 'given', selected);
        predImg.src = api.maskRenderUrl(imageSelect.value, 'pred', selected);
        void controller.refresh(imageSelect.value, selected);
    };

    imageSelect.addEventListener('change', apply);
    for (const box of boxes.values()) box.addEventListener('change', apply);
    root.querySelector('#t3-all')!.addEventListener('click', () => {
        for (const box of boxes.values()) box.checked = true;
        apply();
    });
    root.querySelector('#t3-none')!.addEventListener('click', () => {
        for (const box of boxes.values()) box.checked = false;
        apply();
    });

    const wireHover = (img: HTMLImageElement, which: 'given' | 'pred') => {
        const hover = debounce((offsetX: number, offsetY: number) => {
            const pixel = imageHitToPixel(
                offsetX,
                offsetY,
                img.clientWidth,
                img.clientHeight,
                image.width,
                image.height,
            );
            void controller.hoverMask(imageSelect.value, which, pixel);
        }, 50);
        img.addEventListener('mousemove', (e) => hover(e.offsetX, e.offsetY));
        img.addEventListener('mouseleave', () => void controller.hoverMask(imageSelect.value, which, null));
    };
    wireHover(givenImg, 'given');
    wireHover(predImg, 'pred');

    apply();
}
