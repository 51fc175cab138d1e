import { describe, expect, it, vi } from 'vitest';

import { ApiClient, FetchSlot, debounce, resolveApiBase } from '../src/api.js';
import { jsonResponse, mockApi } from './helpers.js';

describe('resolveApiBase', () => {
    it('defaults to same-origin', () => {
        expect(resolveApiBase('')).toBe('');
        expect(resolveApiBase('?t=2')).toBe('');
    });

    it('honors the api query parameter and trims trailing slashes', () => {
        expect(resolveApiBase('?api=http://127.0.0.1:8000')).toBe('http://127.0.0.1:8000');
        expect(resolveApiBase('?api=http://h:1/')).toBe('http://h:1');
    });
});

describe('ApiClient url building', () => {
    const api = new ApiClient('http://h');

    it('uses the versioned prefix verbatim', () => {
        expect(api.url('/categories')).toBe('http://h/api/v1/categories');
    });

    it('encodes composite parameters', () => {
        const url = api.compositeUrl('img_0001', {
            category: 'traffic light',
            colormap: 'turbo',
            alpha1: 1,
            alpha2: 0.5,
        });
        expect(url).toBe(
            'http://h/api/v1/image/img_0001/composite?category=traffic+light&colormap=turbo&alpha1=1&alpha2=0.5',
        );
    });

    it('an empty selection renders no categories, not all', () => {
        const url = api.maskRenderUrl('a', 'given', []);
        expect(url).toContain('selected=');
        expect(new URL(url).searchParams.get('selected')).toBe('');
    });

    it('raises on failing responses', async () => {
        const failing = new ApiClient('http://h', () => Promise.resolve(jsonResponse({}, 500)));
        await expect(failing.categories()).rejects.toThrow('500');
    });
});

describe('FetchSlot (cancel-on-supersede)', () => {
    function job(value: string, ms: number) {
        return (signal: AbortSignal) =>
            new Promise<string>((resolve, reject) => {
                const timer = setTimeout(() => resolve(value), ms);
                signal.addEventListener('abort', () => {
                    clearTimeout(timer);
                    reject(new Error('aborted'));
                });
            });
    }

    it('a newer request supersedes the older one', async () => {
        const slot = new FetchSlot();
        const first = slot.run(job('stale', 50));
        const second = slot.run(job('fresh', 1));
        await expect(second).resolves.toBe('fresh');
        await expect(first).resolves.toBeNull();
    });

    it('non-abort failures propagate', async () => {
        const slot = new FetchSlot();
        await expect(slot.run(() => Promise.reject(new Error('boom')))).rejects.toThrow('boom');
    });

    it('cancel aborts the in-flight request', async () => {
        const slot = new FetchSlot();
        const pending = slot.run(job('never', 50));
        slot.cancel();
        await expect(pending).resolves.toBeNull();
    });
});

describe('debounce', () => {
    it('fires once with the latest arguments', () => {
        vi.useFakeTimers();
        const spy = vi.fn();
        const run = debounce(spy, 50);
        run(1);
        run(2);
        run(3);
        vi.advanceTimersByTime(60);
        expect(spy).toHaveBeenCalledTimes(1);
        expect(spy).toHaveBeenCalledWith(3);
        vi.useRealTimers();
    });
});

describe('mockApi plumbing', () => {
    it('records calls and routes payloads', async () => {
        const { api, calls } = mockApi({ '/api/v1/categories': () => [{ id: 0, name: 'road', color: [1, 2, 3] }] });
        const categories = await api.categories();
        expect(categories[0].name).toBe('road');
        expect(calls).toHaveLength(1);
    });
});
