// Built by `wasm-bindgen --target web --out-dir www/pkg`; see the README.
import init, { z_curve, voronoi_compare, exppair_report } from "./pkg/divzeta_browser.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  let xmin = Infinity, xmax = -Infinity, ymin = Infinity, ymax = -Infinity;
  for (const s of series) {
    for (const [x, y] of s.points) {
      if (x < xmin) xmin = x;
      if (x > xmax) xmax = x;
      if (y < ymin) ymin = y;
      if (y > ymax) ymax = y;
    }
  }
  if (ymin === ymax) { ymin -= 1; ymax += 1; }
  const pad = 30;
  const sx = (x) => pad + (x - xmin) / (xmax - xmin) * (w - 2 * pad);
  const sy = (y) => h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  if (ymin < 0 && ymax > 0) {
    ctx.beginPath();
    ctx.moveTo(pad, sy(0));
    ctx.lineTo(w - pad, sy(0));
    ctx.stroke();
  }
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText(xmin.toPrecision(6), pad, h - 10);
  ctx.fillText(xmax.toPrecision(6), w - pad - 50, h - 10);
  ctx.fillText(ymax.toPrecision(4), 2, pad);
  ctx.fillText(ymin.toPrecision(4), 2, h - pad);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    s.points.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
  }
}

function guarded(infoId, f) {
  return () => {
    const info = $(infoId);
    info.className = "";
    try {
      const t0 = performance.now();
      const msg = f();
      info.textContent = `${msg} (${(performance.now() - t0).toFixed(0)} ms)`;
    } catch (e) {
      info.className = "err";
      info.textContent = String(e);
    }
  };
}

function drawZ() {
  const flat = z_curve(num("z-min"), num("z-max"), num("z-n"));
  const pts = [];
  let zeros = 0;
  for (let i = 0; i < flat.length; i += 2) {
    pts.push([flat[i], flat[i + 1]]);
    if (i > 0 && Math.sign(flat[i + 1]) !== Math.sign(flat[i - 1])) zeros++;
  }
  plot($("z-canvas"), [{ points: pts, color: "#1f5fbf" }]);
  return `${zeros} sign changes`;
}

function drawVoronoi() {
  const flat = voronoi_compare(num("v-min"), num("v-max"), num("v-n"), num("v-terms"), $("v-star").checked);
  const exact = [], series = [];
  let sq = 0;
  for (let i = 0; i < flat.length; i += 3) {
    exact.push([flat[i], flat[i + 1]]);
    series.push([flat[i], flat[i + 2]]);
    sq += (flat[i + 1] - flat[i + 2]) ** 2;
  }
  plot($("v-canvas"), [{ points: exact, color: "#1f5fbf" }, { points: series, color: "#d2691e" }]);
  return `RMS residual ${Math.sqrt(sq / exact.length).toFixed(3)}`;
}

function showPair() {
  const out = $("e-out");
  try {
    const r = JSON.parse(exppair_report($("e-k").value, $("e-l").value, $("e-w").value, $("e-h").checked));
    const rows = [
      ["pair", `(${r.kappa}, ${r.lambda})`, `(${r.decimal.kappa.toFixed(6)}, ${r.decimal.lambda.toFixed(6)})`],
      ["word", r.word, ""],
      ["Δ, E exponent", r.theta_div, r.decimal.theta_div.toFixed(8)],
      ["ζ exponent", r.theta_zeta, r.decimal.theta_zeta.toFixed(8)],
      ["3λ + κ < 2", String(r.beats_one_third), r.beats_one_third ? "beats 1/3" : ""],
      ["λ < 1", String(r.nontrivial), ""],
    ];
    out.innerHTML = rows.map((r) => `<tr>${r.map((c) => `<td>${c}</td>`).join("")}</tr>`).join("");
  } catch (e) {
    out.innerHTML = `<tr><td class="err">${String(e)}</td></tr>`;
  }
}

await init();
$("z-go").onclick = guarded("z-info", drawZ);
$("v-go").onclick = guarded("v-info", drawVoronoi);
$("e-go").onclick = showPair;
$("z-go").click();
$("v-go").click();
showPair();
