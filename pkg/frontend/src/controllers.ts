/** Data flow behind the three task views, kept free of DOM concerns.
 *
 * Controllers own what gets fetched when; views own elements and events.
 * Every fetch goes through a FetchSlot so a superseded request can never
 * clobber newer data, and failures surface through onError while the
 * previous (stale) data stays in place.
 */

import {
    ApiClient,
    FetchSlot,
    OccupancyPayload,
    ScatterPoint,
    SeriesPayload,
} from './api.js';
import { formatWeight, rgbCss } from './format.js';
import { ScatterDataset } from './scatter.js';

export type Palette = Map<string, [number, number, number]>;

export type ErrorSink = (message: string) => void;

const DETAIL_COLOR = '#336699'; // detail plots drop the category hue channel

export class Task1Controller {
    overview: SeriesPayload[] = [];
    detail: SeriesPayload | null = null;
    fetchCount = 0;

    private overviewSlot = new FetchSlot();
    private detailSlot = new FetchSlot();

    constructor(
        private readonly api: ApiClient,
        private readonly onUpdate: () => void,
        private readonly onError: ErrorSink,
    ) {}

    async loadInitial(category: string): Promise<void> {
        try {
            const [overview, detail] = await Promise.all([
                this.overviewSlot.run((s) => this.api.scatterOverview(s)),
                this.detailSlot.run((s) => this.api.scatterDetail(category, s)),
            ]);
            if (overview) this.overview = overview.series;
            if (detail) this.detail = detail;
            this.fetchCount += 2;
            this.onUpdate();
        } catch (err) {
            this.onError(`loading scatter data failed: ${String(err)}`);
        }
    }

    /** A dropdown change refetches the detail series only. */
    async selectCategory(category: string): Promise<void> {
        try {
            const detail = await this.detailSlot.run((s) => this.api.scatterDetail(category, s));
            if (detail === null) return; // superseded
            this.fetchCount += 1;
            this.detail = detail;
            this.onUpdate();
        } catch (err) {
            this.onError(`loading ${category} failed: ${String(err)}`);
        }
    }

    overviewDatasets(palette: Palette): ScatterDataset[] {
        return this.overview.map((s) => ({
            label: s.category,
            color: rgbCss(palette.get(s.category) ?? [0, 0, 0]),
            points: s.points,
        }));
    }

    detailDataset(): ScatterDataset[] {
        if (this.detail === null) return [];
        return [{ label: this.detail.category, color: DETAIL_COLOR, points: this.detail.points }];
    }
}

export class Task2Controller {
    /** Formatted weight under the 3-decimal display contract, or null. */
    readout: string | null = null;
    hover: { x: number; y: number } | null = null;

    private weightSlot = new FetchSlot();

    constructor(
        private readonly api: ApiClient,
        private readonly onUpdate: () => void,
        private readonly onError: ErrorSink,
    ) {}

    /** Null clears the readout (out-of-bounds hover shows nothing). */
    async hoverAt(imageId: string, category: string, pixel: { x: number; y: number } | null): Promise<void> {
        if (pixel === null) {
            this.hover = null;
            this.readout = null;
            this.weightSlot.cancel();
            this.onUpdate();
            return;
        }
        try {
            const result = await this.weightSlot.run((s) =>
                this.api.weightAt(imageId, category, pixel.x, pixel.y, s),
            );
            if (result === null) return; // superseded
            this.hover = pixel;
            this.readout = formatWeight(result.weight);
            this.onUpdate();
        } catch (err) {
            this.onError(`weight lookup failed: ${String(err)}`);
        }
    }
}

export interface Task3Scatters {
    givenVsPred: ScatterDataset[];
    givenVsIou: ScatterDataset[];
    predVsIou: ScatterDataset[];
}

export class Task3Controller {
    occupancy: OccupancyPayload | null = null;
    maskCategory: { which: 'given' | 'pred'; name: string } | null = null;

    private occupancySlot = new FetchSlot();
    private maskInfoSlot = new FetchSlot();

    constructor(
        private readonly api: ApiClient,
        private readonly onUpdate: () => void,
        private readonly onError: ErrorSink,
    ) {}

    /** Checkbox toggles re-request occupancy for the new selection. */
    async refresh(imageId: string, selected: string[]): Promise<void> {
        try {
            const result = await this.occupancySlot.run((s) => this.api.occupancy(imageId, selected, s));
            if (result === null) return; // superseded
            this.occupancy = result;
            this.onUpdate();
        } catch (err) {
            this.onError(`loading occupancy failed: ${String(err)}`);
        }
    }

    async hoverMask(
        imageId: string,
        which: 'given' | 'pred',
        pixel: { x: number; y: number } | null,
    ): Promise<void> {
        if (pixel === null) {
            this.maskCategory = null;
            this.maskInfoSlot.cancel();
            this.onUpdate();
            return;
        }
        try {
            const result = await this.maskInfoSlot.run((s) =>
                this.api.maskInfo(imageId, which, pixel.x, pixel.y, s),
            );
            if (result === null) return;
            this.maskCategory = { which, name: result.category };
            this.onUpdate();
        } catch (err) {
            this.onError(`mask lookup failed: ${String(err)}`);
        }
    }

    scatters(palette: Palette): Task3Scatters {
        const make = (points: ScatterPoint[]): ScatterDataset[] =>
            points.map((p) => ({
                label: p.category,
                color: rgbCss(palette.get(p.category) ?? [0, 0, 0]),
                points: [[p.x, p.y]] as [number, number][],
            }));
        if (this.occupancy === null) {
            return { givenVsPred: [], givenVsIou: [], predVsIou: [] };
        }
        return {
            givenVsPred: make(this.occupancy.scatter.given_vs_pred),
            givenVsIou: make(this.occupancy.scatter.given_vs_iou),
            predVsIou: make(this.occupancy.scatter.pred_vs_iou),
        };
    }
}
