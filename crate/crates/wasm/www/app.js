import init, { amplitude, lgi, oracleCheck } from "./pkg/lgi_decay_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

// Draws each series as a polyline; `hlines` are dashed horizontal markers.
function plot(canvas, series, { hlines = [], xLabel = "", yMin = null, yMax = null } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);

  const xs = series.flatMap((s) => s.x);
  const ys = series.flatMap((s) => s.y).concat(hlines);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const y0 = yMin ?? Math.min(...ys), y1 = yMax ?? Math.max(...ys);
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);

  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(y1.toFixed(2), 4, pad + 4);
  ctx.fillText(y0.toFixed(2), 4, h - pad);
  ctx.fillText(x0.toFixed(2), pad, h - pad + 16);
  ctx.fillText(x1.toFixed(2), w - pad - 24, h - pad + 16);
  ctx.fillText(xLabel, w / 2 - 20, h - 8);

  ctx.setLineDash([6, 4]);
  for (const y of hlines) {
    ctx.strokeStyle = "#000";
    ctx.beginPath();
    ctx.moveTo(pad, py(y));
    ctx.lineTo(w - pad, py(y));
    ctx.stroke();
  }
  ctx.setLineDash([]);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width ?? 2;
    ctx.beginPath();
    s.x.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.y[i])) : ctx.moveTo(px(x), py(s.y[i]))));
    ctx.stroke();
  }
}

function bath() {
  return [num("gamma"), num("lambda"), num("delta")];
}

function refresh() {
  for (const o of document.querySelectorAll("output")) o.value = $(o.htmlFor).value;
  try {
    const order = num("order");
    const curve = lgi(...bath(), num("t1"), order);
    const name = order === 4 ? "C4" : "C3";
    plot($("lgi"), [{ x: curve.tau, y: curve.witness, color: "#c33" }], {
      hlines: [curve.bound],
      xLabel: "ω0 τ",
    });
    const iv = curve.intervals;
    const spans = [];
    for (let i = 0; i < iv.length; i += 2) spans.push(`(${iv[i].toFixed(3)}, ${iv[i + 1].toFixed(3)})`);
    $("lgi-summary").textContent =
      `max ${name} = ${curve.max.toFixed(5)} at ω0τ = ${curve.argmax.toFixed(4)}\n` +
      `violation intervals: ${spans.length ? spans.join(", ") : "none"}`;

    const amp = amplitude(...bath(), 20, 800);
    plot($("amp"), [{ x: amp.x, y: amp.y, color: "#36c" }], { xLabel: "ω0 t", yMin: 0, yMax: 1 });
  } catch (e) {
    $("lgi-summary").textContent = `error: ${e.message ?? e}`;
  }
}

function runOracle() {
  $("oracle-summary").textContent = "running...";
  // let the status text paint before the blocking computation
  setTimeout(() => {
    try {
      const r = oracleCheck(...bath(), num("modes"), 5);
      plot(
        $("oracle"),
        [
          { x: r.t, y: r.analytic, color: "#36c", width: 3 },
          { x: r.t, y: r.oracle, color: "#e80", width: 1.5 },
        ],
        { xLabel: "ω0 t", yMin: 0, yMax: 1 },
      );
      $("oracle-summary").textContent =
        `|c1(t)| closed form (blue) vs ${num("modes")}-mode bath (orange); max |error| = ${r.maxError.toExponential(2)}`;
    } catch (e) {
      $("oracle-summary").textContent = `error: ${e.message ?? e}`;
    }
  }, 10);
}

await init();
for (const id of ["gamma", "lambda", "delta", "t1", "order"]) $(id).addEventListener("input", refresh);
$("modes").addEventListener("input", () => ($("modes").nextElementSibling.value = $("modes").value));
$("run-oracle").addEventListener("click", runOracle);
refresh();
