// Page assembly. Every page is an async render into a container; data flows
// from the HubClient only, and errors render as states rather than crashes.

import { HubApiError, HubClient } from "./api.js";
import { renderArchitectureTable, renderDiffTable } from "./diff.js";
import { clear, el } from "./dom.js";
import { fileToRecord, readRecord, renderPredictionForm } from "./form.js";
import { renderLeaderboard } from "./leaderboard.js";
import type { FormSchema, PlaygroundInfo, PredictResponse } from "./types.js";

function errorBox(err: unknown): HTMLElement {
  if (err instanceof HubApiError) {
    return el("div", { class: "error-box", "data-code": err.code }, [
      `${err.code}: ${err.message}`,
    ]);
  }
  return el("div", { class: "error-box" }, [String(err)]);
}

function heading(text: string): HTMLElement {
  return el("h2", {}, [text]);
}

export async function playgroundListPage(root: HTMLElement, client: HubClient): Promise<void> {
  clear(root);
  root.append(heading("Playgrounds"));
  try {
    const { playgrounds } = await client.listPlaygrounds();
    if (!playgrounds.length) {
      root.append(el("p", { class: "empty-state" }, ["No playgrounds yet."]));
      return;
    }
    const list = el("table", { class: "playground-list" });
    list.append(
      el("thead", {}, [
        el("tr", {}, [
          el("th", {}, ["playground"]),
          el("th", {}, ["owner"]),
          el("th", {}, ["input"]),
          el("th", {}, ["task"]),
          el("th", {}, ["active model"]),
        ]),
      ]),
    );
    const body = el("tbody");
    for (const pg of playgrounds) {
      body.append(
        el("tr", {}, [
          el("td", {}, [el("a", { href: `#/playgrounds/${pg.id}` }, [pg.id ?? ""])]),
          el("td", {}, [pg.owner]),
          el("td", {}, [pg.input_type]),
          el("td", {}, [pg.task_type]),
          el("td", {}, [
            pg.deployment.active_version === null
              ? "none"
              : `v${pg.deployment.active_version}`,
          ]),
        ]),
      );
    }
    list.append(body);
    root.append(list);
  } catch (err) {
    root.append(errorBox(err));
  }
}

function renderResults(container: HTMLElement, response: PredictResponse): void {
  clear(container);
  container.append(
    el("div", { class: "served-by" }, [`served by model version ${response.model_version}`]),
  );
  const list = el("ul", { class: "prediction-results" });
  for (const row of response.results) {
    if (row.status === "ok") {
      list.append(
        el("li", { class: "prediction-ok" }, [
          "prediction: ",
          el("strong", { class: "prediction-value" }, [String(row.prediction)]),
        ]),
      );
    } else {
      list.append(
        el("li", { class: "prediction-error" }, [
          `row failed: ${row.error?.code ?? "error"} ${row.error?.message ?? ""}`,
        ]),
      );
    }
  }
  container.append(list);
}

export function mountPredictionForm(
  section: HTMLElement,
  client: HubClient,
  playgroundId: string,
  schema: FormSchema,
): void {
  const form = renderPredictionForm(schema);
  const results = el("div", { class: "results-pane" });
  section.append(form, results);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      clear(results);
      try {
        let record: unknown;
        if (schema.input_type === "image") {
          const fileInput = form.querySelector<HTMLInputElement>('input[type="file"]');
          const file = fileInput?.files?.[0];
          if (!file) throw new Error("choose a file first");
          record = await fileToRecord(file);
        } else {
          record = readRecord(form, schema);
        }
        const response = await client.predict(playgroundId, [record]);
        renderResults(results, response);
      } catch (err) {
        if (err instanceof HubApiError && err.code === "no_runtime_model") {
          results.append(
            el("div", { class: "no-model-state" }, [
              "No model deployed yet - deploy a version to enable predictions.",
            ]),
          );
        } else {
          results.append(errorBox(err));
        }
      }
    })();
  });
}

function trackSection(pg: PlaygroundInfo): HTMLElement {
  const section = el("section", { class: "tracks" });
  section.append(heading("Tracks"));
  if (!pg.tracks.length) {
    section.append(el("p", { class: "empty-state" }, ["No tracks yet."]));
    return section;
  }
  const list = el("ul", { class: "track-list" });
  for (const track of pg.tracks) {
    const label =
      `${track.kind} | ${track.num_eval_rows} rows` +
      (track.kind === "competition" ? ` (${track.num_secret_rows} secret)` : "") +
      ` | ${track.num_versions} submissions` +
      (track.finalized ? " | finalized" : "");
    list.append(
      el("li", {}, [
        el("a", { href: `#/tracks/${track.id}/leaderboard` }, [label]),
      ]),
    );
  }
  section.append(list);
  return section;
}

export async function playgroundPage(
  root: HTMLElement,
  client: HubClient,
  playgroundId: string,
): Promise<void> {
  clear(root);
  try {
    const pg = await client.getPlayground(playgroundId);
    root.append(heading(`Playground ${pg.id ?? playgroundId}`));
    root.append(
      el("div", { class: "pg-facts" }, [
        `${pg.input_type} ${pg.task_type} | ${pg.visibility} | owner ${pg.owner}` +
          ` | active model: ${
            pg.deployment.active_version === null ? "none" : `v${pg.deployment.active_version}`
          }`,
      ]),
    );
    root.append(trackSection(pg));

    const formSection = el("section", { class: "predict-section" });
    formSection.append(heading("Predict"));
    root.append(formSection);
    if (pg.deployment.active_version === null) {
      formSection.append(
        el("div", { class: "no-model-state" }, [
          "No model deployed yet - deploy a version to enable predictions.",
        ]),
      );
      return;
    }
    try {
      const schema = await client.getSchema(playgroundId);
      mountPredictionForm(formSection, client, playgroundId, schema);
    } catch (err) {
      formSection.append(errorBox(err));
    }
  } catch (err) {
    root.append(errorBox(err));
  }
}

export async function leaderboardPage(
  root: HTMLElement,
  client: HubClient,
  trackId: string,
  sort?: string,
): Promise<void> {
  clear(root);
  root.append(heading("Leaderboard"));
  try {
    const board = await client.getLeaderboard(trackId, { sort });
    const controls = el("div", { class: "board-controls" });
    const select = el("select", { class: "sort-select" });
    const metricKeys = board.entries.length
      ? Object.keys(board.entries[0].metrics)
      : [board.sort_metric];
    for (const key of metricKeys) {
      const option = el("option", { value: key }, [key]);
      if (key === board.sort_metric) option.selected = true;
      select.append(option);
    }
    // re-sorting always round-trips: the server owns the ordering rules
    select.addEventListener("change", () => {
      window.location.hash = `#/tracks/${trackId}/leaderboard?sort=${select.value}`;
    });
    controls.append(el("label", {}, ["sort by "]), select);
    root.append(controls);
    root.append(
      renderLeaderboard(board, {
        modelHref: (modelId) => `#/models/${modelId}`,
        csvHref: client.leaderboardCsvUrl(trackId, sort),
      }),
    );
  } catch (err) {
    root.append(errorBox(err));
  }
}

export async function modelPage(
  root: HTMLElement,
  client: HubClient,
  modelId: string,
): Promise<void> {
  clear(root);
  try {
    const meta = await client.getModel(modelId);
    root.append(heading(`Model v${meta.version} (${meta.model_id ?? modelId})`));
    root.append(
      el("div", { class: "model-facts" }, [
        `submitted by ${meta.submitter} | ` +
          `${meta.summary.parameter_count} parameters | ` +
          `${meta.summary.memory_size_bytes} bytes`,
      ]),
    );
    root.append(
      el("a", { class: "artifact-link", href: client.artifactUrl(modelId) }, [
        "Download ONNX artifact",
      ]),
    );
    const metrics = el("ul", { class: "model-metrics" });
    for (const [key, value] of Object.entries(meta.metrics)) {
      metrics.append(el("li", {}, [`${key}: ${String(value)}`]));
    }
    root.append(metrics);
    root.append(heading("Architecture"));
    root.append(renderArchitectureTable(meta.summary));

    const compare = el("form", { class: "compare-form" });
    const input = el("input", {
      type: "text",
      placeholder: "other model id",
      class: "compare-input",
    });
    compare.append(input, el("button", { type: "submit" }, ["Compare"]));
    compare.addEventListener("submit", (event) => {
      event.preventDefault();
      if (input.value.trim()) {
        window.location.hash = `#/models/${modelId}/compare/${input.value.trim()}`;
      }
    });
    root.append(compare);
  } catch (err) {
    root.append(errorBox(err));
  }
}

export async function comparePage(
  root: HTMLElement,
  client: HubClient,
  leftId: string,
  rightId: string,
): Promise<void> {
  clear(root);
  root.append(heading(`Compare ${leftId} vs ${rightId}`));
  try {
    const diff = await client.compareModels(leftId, rightId);
    root.append(
      el("div", { class: "diff-legend" }, [
        "legend: = same, ~ changed, - only left, + only right",
      ]),
    );
    root.append(renderDiffTable(diff));
  } catch (err) {
    root.append(errorBox(err));
  }
}
