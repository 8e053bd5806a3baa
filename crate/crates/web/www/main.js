import init, { interval_series, shell_series, thue_morse_strip } from "./pkg/weylab_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, s) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 28;
  ctx.clearRect(0, 0, w, h);
  const xs = s.window_len.map(Math.log2);
  const x0 = Math.min(...xs), x1 = Math.max(...xs, x0 + 1);
  const top = Math.max(1e-9, ...s.weyl, ...s.besicovitch, ...s.check);
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - (y / top) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.fillText(top.toPrecision(3), 2, pad + 4);
  ctx.fillText("0", 2, h - pad);
  ctx.fillText(`L = 2^${Math.round(x0)}`, pad, h - 8);
  ctx.fillText(`2^${Math.round(x1)}`, w - pad - 24, h - 8);
  for (const [key, color] of [["check", "#aaa"], ["besicovitch", "#36c"], ["weyl", "#111"]]) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    s[key].forEach((v, i) => (i ? ctx.lineTo(px(xs[i]), py(v)) : ctx.moveTo(px(xs[i]), py(v))));
    ctx.stroke();
  }
}

function guard(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function interval() {
  guard($("iv-out"), () => {
    const r = JSON.parse(interval_series(num("iv-y"), num("iv-n")));
    plot($("iv-plot"), r.series);
    $("iv-out").textContent =
      `weyl estimate ${r.series.weyl_value.toFixed(6)}   2/n = ${r.expected.toFixed(6)}   d = ${r.euclidean.toFixed(6)}`;
  });
}

function shells() {
  guard($("sh-out"), () => {
    const r = JSON.parse(shell_series(num("sh-k"), num("sh-a"), num("sh-b"), num("sh-n")));
    plot($("sh-plot"), r.series);
    $("sh-out").textContent = `weyl estimate ${r.series.weyl_value.toFixed(6)}   d = ${r.euclidean.toFixed(6)}`;
  });
}

function strip(canvas, rows) {
  const ctx = canvas.getContext("2d");
  const n = rows[0].length;
  const cw = canvas.width / n, ch = canvas.height / rows.length;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  rows.forEach((row, r) =>
    row.forEach((b, i) => {
      ctx.fillStyle = b ? "#222" : "#eee";
      ctx.fillRect(i * cw, r * ch + 2, Math.max(cw - 0.5, 0.5), ch - 4);
    }),
  );
}

function thueMorse() {
  guard($("tm-out"), () => {
    const r = JSON.parse(thue_morse_strip($("tm-p").value, num("tm-lo"), num("tm-hi"), 12));
    strip($("tm-strip"), [r.x, r.negation, r.toeplitz]);
    $("tm-out").textContent =
      `rows: x, its negation, Toeplitz image\n${r.point}\nweyl(x, negation) = ${r.series.weyl_value}`;
  });
}

await init();
$("iv-go").onclick = interval;
$("sh-go").onclick = shells;
$("tm-go").onclick = thueMorse;
interval();
shells();
thueMorse();
