import init, { presets, summary, greenProfile, evaluatePair, valueMatrix } from "./pkg/metrized_green_demo.js";

const $ = (id) => document.getElementById(id);
const SAMPLES = 121;
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

let edges = [];

function currentGraph() {
  return $("graph").value;
}

function exact() {
  return $("exact").checked;
}

function definitionList(el, entries) {
  el.replaceChildren();
  for (const [k, v] of entries) {
    const dt = document.createElement("dt");
    dt.textContent = k;
    const dd = document.createElement("dd");
    dd.textContent = v;
    el.append(dt, dd);
  }
}

function resistanceTable(vertices, rows) {
  const table = document.createElement("table");
  const head = table.insertRow();
  head.insertCell().textContent = "";
  for (const v of vertices) head.appendChild(Object.assign(document.createElement("th"), { textContent: v }));
  rows.forEach((row, i) => {
    const tr = table.insertRow();
    tr.appendChild(Object.assign(document.createElement("th"), { textContent: vertices[i] }));
    for (const cell of row) tr.insertCell().textContent = cell;
  });
  $("resistance").replaceChildren(table);
}

function refreshGraph() {
  $("graph-error").textContent = "";
  let parsed;
  try {
    parsed = JSON.parse(currentGraph());
    const s = JSON.parse(summary(currentGraph(), exact()));
    definitionList($("summary"), [
      ["tau", s.tau],
      ["total length", s.total_length],
      ["genus", String(s.genus)],
      ["bridges", s.bridges.length ? s.bridges.join(", ") : "none"],
      ["arithmetic", s.mode],
    ]);
    resistanceTable(s.vertices, s.resistance);
  } catch (e) {
    $("graph-error").textContent = String(e);
    return;
  }
  edges = parsed.edges.map((e) => ({ id: e.id, length: Number(lengthValue(e.length)) }));
  const select = $("source-edge");
  const previous = select.value;
  select.replaceChildren(...edges.map((e) => new Option(e.id, e.id)));
  if (edges.some((e) => e.id === previous)) select.value = previous;
  refreshPlot();
  $("z-out").textContent = "";
}

// lengths may be numbers, decimal strings or "p/q"
function lengthValue(value) {
  const text = String(value);
  const slash = text.indexOf("/");
  return slash < 0 ? Number(text) : Number(text.slice(0, slash)) / Number(text.slice(slash + 1));
}

function sourcePoint() {
  const edge = edges.find((e) => e.id === $("source-edge").value);
  if (!edge) return null;
  const t = Number($("source-offset").value) / 1000;
  return `${edge.id}:${(t * edge.length).toPrecision(6)}`;
}

function refreshPlot() {
  const point = sourcePoint();
  if (!point) return;
  $("source-label").textContent = point;
  let profile;
  try {
    profile = JSON.parse(greenProfile(currentGraph(), point, SAMPLES));
  } catch (e) {
    $("graph-error").textContent = String(e);
    return;
  }
  draw(profile);
}

function draw(profile) {
  const canvas = $("plot");
  const ratio = window.devicePixelRatio || 1;
  const width = canvas.clientWidth, height = canvas.clientHeight;
  canvas.width = width * ratio;
  canvas.height = height * ratio;
  const ctx = canvas.getContext("2d");
  ctx.scale(ratio, ratio);
  ctx.clearRect(0, 0, width, height);

  const pad = { left: 50, right: 10, top: 12, bottom: 28 };
  const total = profile.edges.reduce((s, e) => s + e.length, 0);
  const lo = Math.min(profile.min, 0), hi = Math.max(profile.max, profile.tau);
  const span = hi - lo || 1;
  const sx = (u) => pad.left + (u / total) * (width - pad.left - pad.right);
  const sy = (v) => height - pad.bottom - ((v - lo) / span) * (height - pad.top - pad.bottom);

  ctx.font = "11px system-ui, sans-serif";
  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(pad.left, pad.top);
  ctx.lineTo(pad.left, height - pad.bottom);
  ctx.lineTo(width - pad.right, height - pad.bottom);
  ctx.stroke();
  for (const v of [lo, (lo + hi) / 2, hi]) {
    ctx.fillText(v.toFixed(3), 4, sy(v) + 4);
  }
  if (lo < 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath();
    ctx.moveTo(pad.left, sy(0));
    ctx.lineTo(width - pad.right, sy(0));
    ctx.stroke();
  }
  ctx.setLineDash([5, 4]);
  ctx.strokeStyle = "#555";
  ctx.beginPath();
  ctx.moveTo(pad.left, sy(profile.tau));
  ctx.lineTo(width - pad.right, sy(profile.tau));
  ctx.stroke();
  ctx.setLineDash([]);

  let start = 0;
  profile.edges.forEach((edge, k) => {
    ctx.strokeStyle = COLORS[k % COLORS.length];
    ctx.lineWidth = 2;
    ctx.beginPath();
    edge.offsets.forEach((t, i) => {
      const px = sx(start + t), py = sy(edge.values[i]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.lineWidth = 1;
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(edge.edge, sx(start + edge.length / 2) - 8, height - 10);
    start += edge.length;
    if (k + 1 < profile.edges.length) {
      ctx.strokeStyle = "#eee";
      ctx.beginPath();
      ctx.moveTo(sx(start), pad.top);
      ctx.lineTo(sx(start), height - pad.bottom);
      ctx.stroke();
    }
  });
}

function evaluate() {
  $("pair-error").textContent = "";
  try {
    const out = JSON.parse(evaluatePair(currentGraph(), $("pair-x").value, $("pair-y").value, exact()));
    definitionList($("pair-out"), [
      ["r(x, y)", out.resistance],
      ["g(x, y)", out.green],
    ]);
  } catch (e) {
    $("pair-out").replaceChildren();
    $("pair-error").textContent = String(e);
  }
}

function showValueMatrix() {
  try {
    $("z-out").textContent = valueMatrix(currentGraph(), exact());
    $("z-out").classList.remove("muted");
  } catch (e) {
    $("z-out").textContent = String(e);
  }
}

async function main() {
  await init();
  const all = JSON.parse(presets());
  const select = $("preset");
  select.replaceChildren(...Object.keys(all).map((name) => new Option(name, name)));
  if (all.triangle) select.value = "triangle";
  select.addEventListener("change", () => {
    $("graph").value = all[select.value];
    refreshGraph();
  });
  $("graph").value = all[select.value];
  $("graph").addEventListener("input", refreshGraph);
  $("exact").addEventListener("change", refreshGraph);
  $("source-edge").addEventListener("change", refreshPlot);
  $("source-offset").addEventListener("input", refreshPlot);
  $("pair-go").addEventListener("click", evaluate);
  $("z-go").addEventListener("click", showValueMatrix);
  window.addEventListener("resize", refreshPlot);
  refreshGraph();
  evaluate();
}

main();
