/** Display formatting contracts. The UI never recomputes domain numbers;
 * everything here is presentation-only rounding of API values. */

/** Hover readout contract: saliency weights display with 3 decimals. */
export function formatWeight(w: number): string {
    return w.toFixed(3);
}

/** IoU / occupancy percentages display with 1 decimal. */
export function formatPercent(v: number): string {
    return `${v.toFixed(1)}%`;
}

/**
 * Axis tick labels for object sizes: million-scaled ("0.6M") once the
 * axis reaches 100k pixels, raw integers below that.
 */
export function formatSizeTick(value: number, axisMax: number): string {
    if (axisMax >= 1e5) {
        const millions = value / 1e6;
        const text = millions.toFixed(millions >= 10 ? 0 : millions >= 1 ? 1 : 2);
        return `${trimZeros(text)}M`;
    }
    return String(Math.round(value));
}

function trimZeros(text: string): string {
    return text.includes('.') ? text.replace(/\.?0+$/, '') : text;
}

export function rgbCss([r, g, b]: [number, number, number]): string {
    return `rgb(${r}, ${g}, ${b})`;
}

/**
 * Map a mouse offset inside a scaled <img> to source pixel coordinates.
 * Returns null when the hit falls outside the raster, so hover readouts
 * can hide instead of querying out-of-bounds points.
 */
export function imageHitToPixel(
    offsetX: number,
    offsetY: number,
    clientWidth: number,
    clientHeight: number,
    naturalWidth: number,
    naturalHeight: number,
): { x: number; y: number } | null {
    if (clientWidth <= 0 || clientHeight <= 0) return null;
    const x = Math.floor((offsetX / clientWidth) * naturalWidth);
    const y = Math.floor((offsetY / clientHeight) * naturalHeight);
    if (x < 0 || y < 0 || x >= naturalWidth || y >= naturalHeight) return null;
    return { x, y };
}
