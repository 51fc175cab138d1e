/** Canvas scatter plots with linear or log x scaling. */

import { formatSizeTick } from './format.js';

export interface ScatterDataset {
    label: string;
    color: string;
    points: [number, number][];
}

export interface ScatterOptions {
    xLabel: string;
    yLabel: string;
    /** million-scaled tick labels for pixel sizes */
    xIsSize?: boolean;
    logX?: boolean;
    /** fixed y range; defaults to data extent */
    yRange?: [number, number];
    markRadius?: number;
}

export interface AxisScale {
    min: number;
    max: number;
    log: boolean;
}

/** Data extent padded so single-valued axes still render. */
export function axisScale(values: number[], log: boolean): AxisScale {
    let min = Math.min(...values);
    let max = Math.max(...values);
    if (!Number.isFinite(min) || !Number.isFinite(max)) {
        min = 0;
        max = 1;
    }
    if (log) {
        min = Math.max(min, 1);
        max = Math.max(max, min * 10);
    } else if (min === max) {
        max = min + 1;
    }
    return { min, max, log };
}

/** Fraction of the axis length at which `v` sits. */
export function scaleFraction(v: number, scale: AxisScale): number {
    if (scale.log) {
        const clamped = Math.max(v, scale.min);
        return Math.log(clamped / scale.min) / Math.log(scale.max / scale.min);
    }
    return (v - scale.min) / (scale.max - scale.min);
}

export function linearTicks(scale: AxisScale, count = 5): number[] {
    const ticks: number[] = [];
    for (let i = 0; i <= count; i++) {
        if (scale.log) {
            ticks.push(scale.min * Math.pow(scale.max / scale.min, i / count));
        } else {
            ticks.push(scale.min + ((scale.max - scale.min) * i) / count);
        }
    }
    return ticks;
}

const MARGIN = { left: 46, right: 10, top: 10, bottom: 30 };

export function drawScatter(
    canvas: HTMLCanvasElement,
    datasets: ScatterDataset[],
    options: ScatterOptions,
): void {
    const ctx = canvas.getContext('2d');
    if (!ctx) return;
    const w = canvas.width;
    const h = canvas.height;
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = '#fff';
    ctx.fillRect(0, 0, w, h);

    const plotW = w - MARGIN.left - MARGIN.right;
    const plotH = h - MARGIN.top - MARGIN.bottom;

    const xs = datasets.flatMap((d) => d.points.map((p) => p[0]));
    const ys = datasets.flatMap((d) => d.points.map((p) => p[1]));
    const xScale = axisScale(xs.length ? xs : [0, 1], options.logX ?? false);
    const yScale = options.yRange
        ? { min: options.yRange[0], max: options.yRange[1], log: false }
        : axisScale(ys.length ? ys : [0, 1], false);

    const px = (v: number) => MARGIN.left + scaleFraction(v, xScale) * plotW;
    const py = (v: number) => MARGIN.top + (1 - scaleFraction(v, yScale)) * plotH;

    // frame
    ctx.strokeStyle = '#444';
    ctx.lineWidth = 1;
    ctx.strokeRect(MARGIN.left, MARGIN.top, plotW, plotH);

    // ticks
    ctx.fillStyle = '#333';
    ctx.font = '10px sans-serif';
    ctx.textAlign = 'center';
    for (const t of linearTicks(xScale)) {
        const x = px(t);
        ctx.strokeStyle = '#ddd';
        ctx.beginPath();
        ctx.moveTo(x, MARGIN.top);
        ctx.lineTo(x, MARGIN.top + plotH);
        ctx.stroke();
        const label = options.xIsSize ? formatSizeTick(t, xScale.max) : t.toFixed(0);
        ctx.fillText(label, x, h - MARGIN.bottom + 14);
    }
    ctx.textAlign = 'right';
    for (const t of linearTicks(yScale)) {
        const y = py(t);
        ctx.strokeStyle = '#ddd';
        ctx.beginPath();
        ctx.moveTo(MARGIN.left, y);
        ctx.lineTo(MARGIN.left + plotW, y);
        ctx.stroke();
        ctx.fillText(t.toFixed(0), MARGIN.left - 4, y + 3);
    }

    // axis labels
    ctx.textAlign = 'center';
    ctx.fillText(options.xLabel, MARGIN.left + plotW / 2, h - 4);
    ctx.save();
    ctx.translate(10, MARGIN.top + plotH / 2);
    ctx.rotate(-Math.PI / 2);
    ctx.fillText(options.yLabel, 0, 0);
    ctx.restore();

    // marks
    const r = options.markRadius ?? 2.5;
    for (const ds of datasets) {
        ctx.fillStyle = ds.color;
        for (const [x, y] of ds.points) {
            ctx.beginPath();
            ctx.arc(px(x), py(y), r, 0, Math.PI * 2);
            ctx.fill();
        }
    }
}
