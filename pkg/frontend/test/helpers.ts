// Fixture-backed fetch: serves recorded service responses and logs every
// request so tests can assert exactly which endpoints the UI touched.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8")) as T;
}

export interface LoggedRequest {
  method: string;
  url: string;
  body: unknown;
}

export interface Route {
  method: string;
  pattern: RegExp;
  handler: (body: unknown) => { status?: number; payload: unknown };
}

export function makeFetch(routes: Route[], log: LoggedRequest[]): FetchLike {
  return async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    log.push({ method, url, body });
    for (const route of routes) {
      if (route.method === method && route.pattern.test(url)) {
        const { status = 200, payload } = route.handler(body);
        return new Response(JSON.stringify(payload), {
          status,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ error: `no route ${method} ${url}` }), {
      status: 404,
    });
  };
}
