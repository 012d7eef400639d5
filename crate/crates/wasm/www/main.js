import init, { certify, cyclic_curve, two_cover } from "./pkg/salemlab_wasm.js";

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const c of children) node.append(c);
  return node;
}

function table(rows) {
  return el("table", {}, ...rows.map(([k, v, cls]) => el("tr", {}, el("th", {}, k), el("td", cls ? { class: cls } : {}, String(v)))));
}

function showError(target, err) {
  target.replaceChildren(el("p", { class: "error" }, String(err.message ?? err)));
}

function runCertify(event) {
  event.preventDefault();
  const out = $("certify-out");
  try {
    const r = JSON.parse(certify($("coeffs").value, Number($("bits").value)));
    if (!r.salem) {
      out.replaceChildren(table([["Salem", "no", "fail"], ["reason", r.reason]]));
      return;
    }
    const prime = r.plan?.finite_prime;
    out.replaceChildren(table([
      ["Salem", "yes", "pass"],
      ["P", r.report.p],
      ["trace polynomial Q", r.report.q],
      ["tau", `[${r.report.tau_lo}, ${r.report.tau_hi}]`],
      ["2 ln tau", `[${r.report.geodesic_lo}, ${r.report.geodesic_hi}]`],
      ["2 ln tau (float)", r.geodesic],
      ["inert prime (p, a)", prime ? `(${prime.p}, ${prime.a})` : "none needed"],
    ]));
    out.querySelectorAll("td").forEach((td) => td.classList.add("mono"));
  } catch (err) {
    showError(out, err);
  }
}

function plot(rows) {
  const w = 640, h = 320, pad = 44;
  const xs = rows.map((r) => Math.log(r.m));
  const ys = rows.map((r) => Math.log(r.lambda1));
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);
  const ns = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(ns, "svg");
  svg.setAttribute("width", w);
  svg.setAttribute("height", h);
  const add = (tag, attrs, text) => {
    const n = document.createElementNS(ns, tag);
    for (const [k, v] of Object.entries(attrs)) n.setAttribute(k, v);
    if (text !== undefined) n.textContent = text;
    svg.append(n);
  };
  add("line", { x1: pad, y1: h - pad, x2: w - pad, y2: h - pad, stroke: "#888" });
  add("line", { x1: pad, y1: pad, x2: pad, y2: h - pad, stroke: "#888" });
  add("text", { x: w / 2, y: h - 10, "text-anchor": "middle", "font-size": 12 }, "ln m");
  add("text", { x: 12, y: h / 2, "font-size": 12, transform: `rotate(-90 12 ${h / 2})`, "text-anchor": "middle" }, "ln lambda1");
  const closed = rows.map((r) => `${sx(Math.log(r.m))},${sy(Math.log(r.closed_form))}`).join(" ");
  add("polyline", { points: closed, fill: "none", stroke: "#1f5fbf", "stroke-width": 1.5 });
  rows.forEach((r, i) => add("circle", { cx: sx(xs[i]), cy: sy(ys[i]), r: 2.5, fill: "#c0392b" }));
  return svg;
}

function runCurve(event) {
  event.preventDefault();
  const out = $("curve-out");
  try {
    const r = JSON.parse(cyclic_curve(Number($("m-min").value), Number($("m-max").value)));
    const worst = Math.max(...r.rows.map((row) => row.abs_error));
    out.replaceChildren(
      plot(r.rows),
      table([
        ["log-log slope", r.slope.toFixed(4)],
        ["max |lambda1 - (1 - cos(2 pi / 3m))|", worst.toExponential(2)],
        ["points", r.rows.length],
      ]),
    );
  } catch (err) {
    showError(out, err);
  }
}

function runCover(event) {
  event.preventDefault();
  const out = $("cover-out");
  try {
    const { trace: t, ledger } = JSON.parse(two_cover($("graph").value));
    const summary = table([
      ["lambda1 base", t.lambda1_base],
      ["lambda1 cover", t.lambda1_cover],
      [t.h_cover_exact ? "h cover (exact)" : "h cover (sweep)", t.h_cover],
      ["lambda1 cover / (sqrt(lambda1 base) h cover)", t.ratio],
      ["vacuous (cover gap not smaller)", t.vacuous],
      ["f vanishes somewhere", t.f_has_zero_entry],
    ]);
    if (!ledger) {
      out.replaceChildren(summary);
      return;
    }
    const header = el("tr", {}, ...["step", "lhs", "rhs", "result"].map((s) => el("th", {}, s)));
    const steps = ledger.steps.map((s) => {
      const verdict = !s.asserted ? ["reported", "skip"] : s.holds ? ["holds", "pass"] : ["fails", "fail"];
      const ok = s.holds ? "holds" : "fails";
      return el("tr", {},
        el("td", {}, s.step.replaceAll("_", " ")),
        el("td", {}, s.lhs.toPrecision(10)),
        el("td", {}, s.rhs.toPrecision(10)),
        el("td", { class: verdict[1] }, s.asserted ? verdict[0] : `${ok} (${verdict[0]})`));
    });
    out.replaceChildren(summary, el("table", {}, header, ...steps));
  } catch (err) {
    showError(out, err);
  }
}

async function main() {
  try {
    await init();
  } catch (err) {
    $("status").textContent = `Could not load the WebAssembly module: ${err}`;
    return;
  }
  $("status").textContent = "Ready.";
  $("certify-form").addEventListener("submit", runCertify);
  $("curve-form").addEventListener("submit", runCurve);
  $("cover-form").addEventListener("submit", runCover);
}

main();
