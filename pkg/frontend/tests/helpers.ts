/** Test doubles: an ApiClient wired to canned route handlers. */

import { ApiClient, FetchLike } from '../src/api.js';

export type RouteHandler = (url: URL) => unknown;

export interface MockApi {
    api: ApiClient;
    /** Every requested URL, in order. */
    calls: string[];
}

export function jsonResponse(data: unknown, status = 200): Response {
    return new Response(JSON.stringify(data), {
        status,
        headers: { 'content-type': 'application/json' },
    });
}

/**
 * Routes are matched by pathname; handlers receive the full URL (query
 * included) and return the JSON payload.
 */
export function mockApi(routes: Record<string, RouteHandler>): MockApi {
    const calls: string[] = [];
    const fetchFn: FetchLike = (rawUrl) => {
        calls.push(rawUrl);
        const url = new URL(rawUrl, 'http://test');
        const handler = routes[url.pathname];
        if (!handler) {
            return Promise.resolve(jsonResponse({ detail: 'not found' }, 404));
        }
        return Promise.resolve(jsonResponse(handler(url)));
    };
    return { api: new ApiClient('http://test', fetchFn), calls };
}
