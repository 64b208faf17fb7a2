// Schema-driven prediction forms: one control per schema field, categorical
// inputs restricted to the declared choices, image playgrounds get a file
// upload that is converted client-side to the documented array JSON.

import { el } from "./dom.js";
import type { FormSchema, SchemaField } from "./types.js";

export type ControlKind = "number" | "select" | "file";

export interface FormControl {
  name: string;
  control: ControlKind;
  choices?: string[];
  example?: unknown;
}

export function schemaToControls(schema: FormSchema): FormControl[] {
  return schema.fields.map((field: SchemaField) => {
    if (field.type === "categorical") {
      return {
        name: field.name,
        control: "select" as const,
        choices: field.choices ?? [],
        example: field.example,
      };
    }
    if (field.type === "image-upload") {
      return { name: field.name, control: "file" as const };
    }
    return { name: field.name, control: "number" as const, example: field.example };
  });
}

export function renderPredictionForm(schema: FormSchema): HTMLFormElement {
  const form = el("form", { class: "prediction-form" });
  for (const control of schemaToControls(schema)) {
    const row = el("div", { class: "form-row" });
    const label = el("label", { for: `field-${control.name}` }, [control.name]);
    row.append(label);
    if (control.control === "select") {
      const select = el("select", {
        id: `field-${control.name}`,
        name: control.name,
        "data-field": control.name,
      });
      for (const choice of control.choices ?? []) {
        const option = el("option", { value: choice }, [choice]);
        if (control.example === choice) option.selected = true;
        select.append(option);
      }
      row.append(select);
    } else if (control.control === "file") {
      row.append(
        el("input", {
          id: `field-${control.name}`,
          type: "file",
          name: control.name,
          "data-field": control.name,
          accept: "image/*,.json",
        }),
      );
    } else {
      const input = el("input", {
        id: `field-${control.name}`,
        type: "number",
        step: "any",
        name: control.name,
        "data-field": control.name,
      });
      if (control.example !== undefined && control.example !== null) {
        input.value = String(control.example);
      }
      row.append(input);
    }
    form.append(row);
  }
  form.append(el("button", { type: "submit", class: "predict-button" }, ["Predict"]));
  return form;
}

export function readRecord(
  form: HTMLFormElement,
  schema: FormSchema,
): Record<string, number | string> {
  const record: Record<string, number | string> = {};
  for (const field of schema.fields) {
    const input = form.querySelector<HTMLInputElement | HTMLSelectElement>(
      `[data-field="${field.name}"]`,
    );
    if (!input) throw new Error(`form is missing field ${field.name}`);
    if (field.type === "categorical") {
      record[field.name] = input.value;
    } else {
      const parsed = Number(input.value);
      if (input.value.trim() === "" || Number.isNaN(parsed)) {
        throw new Error(`field ${field.name} needs a number`);
      }
      record[field.name] = parsed;
    }
  }
  return record;
}

/** Convert an uploaded file into the documented array-JSON record. */
export async function fileToRecord(file: File): Promise<unknown> {
  if (file.name.endsWith(".json") || file.type === "application/json") {
    return JSON.parse(await file.text());
  }
  if (typeof createImageBitmap !== "function" || typeof OffscreenCanvas === "undefined") {
    throw new Error("image decoding unavailable; upload the array as .json instead");
  }
  const bitmap = await createImageBitmap(file);
  const canvas = new OffscreenCanvas(bitmap.width, bitmap.height);
  const ctx = canvas.getContext("2d") as OffscreenCanvasRenderingContext2D | null;
  if (!ctx) throw new Error("canvas 2d context unavailable");
  ctx.drawImage(bitmap, 0, 0);
  const { data, width, height } = ctx.getImageData(0, 0, bitmap.width, bitmap.height);
  // normalized CHW float array, RGB
  const channels: number[][][] = [[], [], []];
  for (let c = 0; c < 3; c++) {
    for (let y = 0; y < height; y++) {
      const rowValues: number[] = [];
      for (let x = 0; x < width; x++) {
        rowValues.push(data[(y * width + x) * 4 + c] / 255);
      }
      channels[c].push(rowValues);
    }
  }
  return channels;
}
