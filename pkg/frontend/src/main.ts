/**
 * Entry point: read the connection settings, mount the app.
 *
 * The service origin defaults to the page's own; a `?api=` query
 * parameter overrides it.  The bearer token is remembered in
 * localStorage after the first prompt.
 */
import { CaseApp } from "./app";
import { CaseClient } from "./client";
import "./style.css";

const TOKEN_KEY = "normcase-token";

function obtainToken(): string {
  const stored = window.localStorage.getItem(TOKEN_KEY);
  if (stored) return stored;
  const entered = window.prompt("Service token") ?? "";
  window.localStorage.setItem(TOKEN_KEY, entered);
  return entered;
}

const root = document.getElementById("app");
if (root) {
  const api = new URL(window.location.href).searchParams.get("api") ?? "";
  const app = new CaseApp(new CaseClient(api, obtainToken()), root);
  void app.showCaseList();
}
