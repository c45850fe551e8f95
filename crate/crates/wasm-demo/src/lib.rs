//! Browser bindings: analyse a loop `L_f`, draw its Latin square, list its
//! `H_{τ,k}` automorphisms. Every entry point returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use skewloop::autgroup;
use skewloop::gf::parse_field_descriptor;
use skewloop::loops::{self, LoopCtx};
use skewloop::{Error, SemifieldCtx, SkewPoly, TowerCtx};

/// Largest loop the page will build.
pub const DEMO_LOOP_CAP: usize = 624;
/// Mlt and subloops are only computed up to this order.
pub const DEMO_GROUP_CAP: usize = 255;

fn build(field: &str, sigma_r: u32, f: &str) -> Result<LoopCtx, Error> {
    let (p, l, modulus) = parse_field_descriptor(field)?;
    if sigma_r == 0 || l % sigma_r != 0 {
        return Err(Error::BadTower(format!("r = {sigma_r} must divide l = {l}")));
    }
    let tower = TowerCtx::new(p, sigma_r, l / sigma_r, modulus.as_deref())?;
    let f = SkewPoly::parse(&tower, f)?;
    let sf = SemifieldCtx::new(tower, &f)?;
    let n = (sf.size() - 1) as usize;
    if n > DEMO_LOOP_CAP {
        return Err(Error::SizeCapExceeded { size: n, cap: DEMO_LOOP_CAP });
    }
    LoopCtx::new(sf)
}

fn finish(v: Result<Value, Error>) -> Result<String, String> {
    v.map(|v| v.to_string()).map_err(|e| e.to_string())
}

pub fn analyze_json(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    finish((|| {
        let l = build(field, sigma_r, f)?;
        let sf = l.semifield();
        let nuc = sf.nuclei();
        let cyc = loops::cyclicity(&l);
        let sw = loops::sandwich_bounds(sf);
        let mut v = json!({
            "f": sf.f().format(sf.tower()),
            "loop_order": l.order(),
            "nuclei": [nuc.left.cardinality, nuc.middle.cardinality, nuc.right.cardinality],
            "center": nuc.center.cardinality,
            "left_cyclic": cyc.left_cyclic,
            "right_cyclic": cyc.right_cyclic,
            "sl_order": sw.sl_order.to_string(),
            "gl_order": sw.gl_order.to_string(),
        });
        if l.order() <= DEMO_GROUP_CAP {
            let g = loops::mlt_group(&l, 1, DEMO_GROUP_CAP)?;
            let inn = loops::inn_group(&l, &g, 1)?;
            let lag = loops::subloops_and_lagrange(&l)?;
            v["mlt_order"] = json!(g.order().to_string());
            v["inn_order"] = json!(inn.order.to_string());
            v["subloop_orders"] = json!(lag.subloop_orders);
            v["weak_lagrange"] = json!(lag.weak);
        }
        Ok(v)
    })())
}

pub fn latin_square_json(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    finish((|| {
        let l = build(field, sigma_r, f)?;
        let sq = loops::latin_square(&l);
        let nucleus: Vec<bool> = {
            let sf = l.semifield();
            let nuc = sf.nuclei().nucleus;
            (0..l.order()).map(|i| sf.in_subspace(&nuc, &l.elem(i))).collect()
        };
        Ok(json!({ "n": sq.n, "legend": sq.legend, "table": sq.table, "in_nucleus": nucleus }))
    })())
}

pub fn automorphisms_json(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    finish((|| {
        let l = build(field, sigma_r, f)?;
        let sf = l.semifield();
        let auts = autgroup::solve_aut_conditions(sf)?;
        let (_, id) = autgroup::aut_group_structure(sf.tower(), &auts)?;
        let inner = autgroup::inner_automorphisms(&l)?;
        let params: Vec<Value> = auts
            .iter()
            .map(|h| json!({ "tau_exponent": h.tau.exponent, "k": sf.tower().field().format(h.k) }))
            .collect();
        Ok(json!({
            "parameters": params,
            "order": auts.len(),
            "group": id.to_string(),
            "inner_count": inner.auts.len(),
            "inner_group": inner.group.map(|g| g.to_string()),
        }))
    })())
}

#[wasm_bindgen]
pub fn analyze(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    analyze_json(field, sigma_r, f)
}

#[wasm_bindgen]
pub fn latin_square(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    latin_square_json(field, sigma_r, f)
}

#[wasm_bindgen]
pub fn automorphisms(field: &str, sigma_r: u32, f: &str) -> Result<String, String> {
    automorphisms_json(field, sigma_r, f)
}
