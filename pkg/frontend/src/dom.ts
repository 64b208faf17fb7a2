// Tiny element builder; keeps page code declarative without a framework.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/** Display an API number exactly as sent, shortening only long fractions. */
export function formatNumber(value: number): string {
  const text = String(value);
  if (text.length <= 8 || Number.isInteger(value)) return text;
  return value.toPrecision(6);
}
