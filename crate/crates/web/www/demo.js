// pkg/ is generated by wasm-bindgen --target web, see the README
import init, { john, chord, check } from "./pkg/johnsections_web.js";

const $ = (id) => document.getElementById(id);
const canvas = $("plane");
const ctx = canvas.getContext("2d");
let scale = 80;

const toScreen = ([x, y]) => [canvas.width / 2 + x * scale, canvas.height / 2 - y * scale];

function path(points, stroke, fill) {
  ctx.beginPath();
  points.forEach((p, i) => {
    const [x, y] = toScreen(p);
    i ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
  });
  ctx.closePath();
  if (fill) { ctx.fillStyle = fill; ctx.fill(); }
  ctx.strokeStyle = stroke;
  ctx.stroke();
}

function body() {
  return [$("class").value, Number($("facets").value), Number($("seed").value)];
}

function draw() {
  let r;
  try {
    r = JSON.parse(john(...body()));
  } catch (e) {
    $("info").textContent = String(e);
    return;
  }
  const all = r.original.concat(r.john);
  const reach = Math.max(1.5, ...all.map(([x, y]) => Math.hypot(x, y)));
  scale = (canvas.width / 2 - 10) / reach;

  ctx.clearRect(0, 0, canvas.width, canvas.height);
  path(r.original, "#aaa", "rgba(0,0,0,0.04)");
  path(r.john, "#000");
  ctx.beginPath();
  ctx.arc(canvas.width / 2, canvas.height / 2, scale, 0, 2 * Math.PI);
  ctx.strokeStyle = "#36c";
  ctx.stroke();

  const { contacts: points, weights } = r.decomposition;
  ctx.fillStyle = "#c33";
  points.forEach((p, i) => {
    const [x, y] = toScreen(p);
    ctx.beginPath();
    ctx.arc(x, y, 2 + 3 * weights[i], 0, 2 * Math.PI);
    ctx.fill();
  });
  $("info").textContent =
    `contact points ${points.length}\nweights ${weights.map((w) => w.toFixed(4)).join(" ")}\n` +
    `|sum w u u^T - I| = ${r.identity_residual.toExponential(2)}`;
  drawChord();
}

function drawChord() {
  const angle = Number($("angle").value);
  const offset = Number($("offset").value);
  const c = JSON.parse(chord(...body(), angle, offset));
  if (c.endpoints.length === 2) {
    const [a, b] = c.endpoints.map(toScreen);
    ctx.beginPath();
    ctx.moveTo(...a);
    ctx.lineTo(...b);
    ctx.strokeStyle = "#e80";
    ctx.lineWidth = 2;
    ctx.stroke();
    ctx.lineWidth = 1;
  }
  $("chord").textContent =
    `distance ${Math.abs(offset).toFixed(2)}\nlength   ${c.length.toFixed(4)}\nbound    ${c.bound.toFixed(4)}`;
}

function runCheck() {
  $("report").textContent = "running...";
  // let the message paint before the (blocking) run
  setTimeout(() => {
    try {
      const args = ["theorem", "n", "k", "trials", "samples"].map((id) => $(id).value);
      const r = check(args[0], ...args.slice(1).map(Number), Number($("seed").value));
      $("report").textContent = JSON.stringify(JSON.parse(r), null, 2);
    } catch (e) {
      $("report").textContent = String(e);
    }
  }, 10);
}

await init();
$("draw").onclick = draw;
// the chord sits on top of the polygon, so both are repainted
$("angle").oninput = draw;
$("offset").oninput = draw;
$("run").onclick = runCheck;
draw();
