/** Task 1: overview/detail scatter pair of object size vs IoU. */

import { ApiClient, Category } from '../api.js';
import { Palette, Task1Controller } from '../controllers.js';
import { drawScatter } from '../scatter.js';
import { ViewState } from '../state.js';

export interface Task1Deps {
    api: ApiClient;
    categories: Category[];
    state: ViewState;
    onStateChange: (state: ViewState) => void;
    onError: (message: string) => void;
}

export function renderTask1(root: HTMLElement, deps: Task1Deps): void {
    const { api, categories, state } = deps;
    const palette: Palette = new Map(categories.map((c) => [c.name, c.color]));

    root.innerHTML = `
      <div class="toolbar">
        <label>category
          <select id="t1-category"></select>
        </label>
        <label><input type="checkbox" id="t1-logx"> log size axis</label>
      </div>
      <div class="pair">
        <figure>
          <canvas id="t1-overview" width="460" height="340"></canvas>
          <figcaption>all categories (overview)</figcaption>
        </figure>
        <figure>
          <canvas id="t1-detail" width="460" height="340"></canvas>
          <figcaption id="t1-detail-caption">detail</figcaption>
        </figure>
      </div>`;

    const select = root.querySelector<HTMLSelectElement>('#t1-category')!;
    for (const c of categories) {
        const opt = document.createElement('option');
        opt.value = c.name;
        opt.textContent = c.name;
        select.appendChild(opt);
    }
    select.value = state.task1Category;
    const logToggle = root.querySelector<HTMLInputElement>('#t1-logx')!;

    const overviewCanvas = root.querySelector<HTMLCanvasElement>('#t1-overview')!;
    const detailCanvas = root.querySelector<HTMLCanvasElement>('#t1-detail')!;
    const caption = root.querySelector<HTMLElement>('#t1-detail-caption')!;

    const redraw = () => {
        const axis = {
            xLabel: 'object size (pixels)',
            yLabel: 'IoU (%)',
            xIsSize: true,
            logX: logToggle.checked,
            yRange: [0, 100] as [number, number],
        };
        drawScatter(overviewCanvas, controller.overviewDatasets(palette), axis);
        drawScatter(detailCanvas, controller.detailDataset(), axis);
        caption.textContent = `${select.value} (detail)`;
    };

    const controller = new Task1Controller(api, redraw, deps.onError);

    select.addEventListener('change', () => {
        deps.onStateChange({ ...deps.state, task1Category: select.value });
        void controller.selectCategory(select.value);
    });
    logToggle.addEventListener('change', redraw);

    void controller.loadInitial(state.task1Category);
}
