/** View state shared by the three task views, round-trippable through the URL. */

export type TaskId = 1 | 2 | 3;

export interface ViewState {
    task: TaskId;
    /** Task 1: category shown in the detail scatter. */
    task1Category: string;
    /** Task 2 selections. */
    task2Image: string | null;
    task2Category: string | null;
    task2Colormap: string;
    alpha1: number;
    alpha2: number;
    /** Task 3 selections; null means every category (the initial overview). */
    task3Image: string | null;
    task3Selected: string[] | null;
}

/** The initial detail view shows the car category; saliency starts on turbo. */
export function defaultState(): ViewState {
    return {
        task: 1,
        task1Category: 'car',
        task2Image: null,
        task2Category: null,
        task2Colormap: 'turbo',
        alpha1: 1.0,
        alpha2: 0.5,
        task3Image: null,
        task3Selected: null,
    };
}

const SELECTED_NONE = '~none~';

/** Serialize into query parameters (stable key order, defaults omitted). */
export function encodeState(state: ViewState): string {
    const q = new URLSearchParams();
    const base = defaultState();
    q.set('t', String(state.task));
    if (state.task1Category !== base.task1Category) q.set('c1', state.task1Category);
    if (state.task2Image !== null) q.set('i2', state.task2Image);
    if (state.task2Category !== null) q.set('c2', state.task2Category);
    if (state.task2Colormap !== base.task2Colormap) q.set('cm', state.task2Colormap);
    if (state.alpha1 !== base.alpha1) q.set('a1', String(state.alpha1));
    if (state.alpha2 !== base.alpha2) q.set('a2', String(state.alpha2));
    if (state.task3Image !== null) q.set('i3', state.task3Image);
    if (state.task3Selected !== null) {
        q.set('sel', state.task3Selected.length === 0 ? SELECTED_NONE : state.task3Selected.join(','));
    }
    return q.toString();
}

export function decodeState(search: string): ViewState {
    const q = new URLSearchParams(search);
    const state = defaultState();
    const t = Number(q.get('t'));
    if (t === 1 || t === 2 || t === 3) state.task = t;
    const c1 = q.get('c1');
    if (c1) state.task1Category = c1;
    state.task2Image = q.get('i2');
    state.task2Category = q.get('c2');
    const cm = q.get('cm');
    if (cm) state.task2Colormap = cm;
    const a1 = q.get('a1');
    if (a1 !== null && Number.isFinite(Number(a1))) state.alpha1 = Number(a1);
    const a2 = q.get('a2');
    if (a2 !== null && Number.isFinite(Number(a2))) state.alpha2 = Number(a2);
    state.task3Image = q.get('i3');
    const sel = q.get('sel');
    if (sel !== null) {
        state.task3Selected = sel === SELECTED_NONE ? [] : sel.split(',').filter((s) => s.length > 0);
    }
    return state;
}

/**
 * Resolve the effective Task-3 selection: null expands to every category.
 */
export function effectiveSelection(state: ViewState, allCategories: string[]): string[] {
    return state.task3Selected === null ? [...allCategories] : state.task3Selected;
}

/** Drop selections that no longer reference API-provided names. */
export function sanitizeState(
    state: ViewState,
    categories: string[],
    colormaps: string[],
    imageIds: string[],
): ViewState {
    const out = { ...state };
    if (!categories.includes(out.task1Category)) out.task1Category = defaultState().task1Category;
    if (out.task2Category !== null && !categories.includes(out.task2Category)) out.task2Category = null;
    if (!colormaps.includes(out.task2Colormap)) out.task2Colormap = defaultState().task2Colormap;
    if (out.task2Image !== null && !imageIds.includes(out.task2Image)) out.task2Image = null;
    if (out.task3Image !== null && !imageIds.includes(out.task3Image)) out.task3Image = null;
    if (out.task3Selected !== null) {
        out.task3Selected = out.task3Selected.filter((name) => categories.includes(name));
    }
    return out;
}
