import init, { analyze, latin_square, automorphisms } from "./pkg/skewloop_wasm_demo.js";

const $ = (id) => document.getElementById(id);

function inputs() {
  return [$("field").value.trim(), Number($("sigma").value), $("poly").value.trim()];
}

function call(fn) {
  $("error").textContent = "";
  try {
    return JSON.parse(fn(...inputs()));
  } catch (e) {
    $("error").textContent = String(e);
    return null;
  }
}

function show(obj) {
  if (obj) $("out").textContent = JSON.stringify(obj, null, 2);
}

// hue per element index; nucleus rows and columns are outlined
function draw(sq) {
  const n = sq.n;
  const cell = Math.max(2, Math.floor(640 / n));
  const c = $("square");
  c.width = c.height = n * cell;
  const ctx = c.getContext("2d");
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const v = sq.table[i * n + j];
      ctx.fillStyle = v === 0 ? "#000" : `hsl(${(360 * v) / n}, 70%, 55%)`;
      ctx.fillRect(j * cell, i * cell, cell, cell);
    }
  }
  if (cell >= 4) {
    ctx.strokeStyle = "#fff";
    sq.in_nucleus.forEach((inside, i) => {
      if (inside) {
        ctx.strokeRect(0, i * cell, n * cell, cell);
        ctx.strokeRect(i * cell, 0, cell, n * cell);
      }
    });
  }
  $("legend").textContent = `${n} elements; black = identity; outlined = nucleus`;
}

async function main() {
  await init();
  $("preset").addEventListener("change", (e) => {
    if (!e.target.value) return;
    const [field, r, f] = e.target.value.split("|");
    $("field").value = field;
    $("sigma").value = r;
    $("poly").value = f;
  });
  $("analyze").addEventListener("click", () => show(call(analyze)));
  $("auts").addEventListener("click", () => show(call(automorphisms)));
  $("latin").addEventListener("click", () => {
    const sq = call(latin_square);
    if (sq) draw(sq);
  });
}

main();
