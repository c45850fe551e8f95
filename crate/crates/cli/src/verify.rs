//! The example suite behind `skewloop verify`.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use skewloop::arith;
use skewloop::autgroup;
use skewloop::census;
use skewloop::loops::{self, LoopCtx};
use skewloop::permgroup::DEGREE_CAP;
use skewloop::{Error, SemifieldCtx, SkewPoly, TowerCtx};

use crate::{Format, Outcome, EXIT_FAILED_CHECK};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub tier: u8,
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub note: Option<String>,
}

fn check(tier: u8, name: &str, expected: impl ToString, observed: impl ToString) -> Check {
    let (e, o) = (expected.to_string(), observed.to_string());
    Check {
        tier,
        name: name.into(),
        pass: e == o,
        expected: e,
        observed: o,
        note: None,
    }
}

fn build(p: u64, modulus: Option<&[u64]>, f: &str) -> Result<LoopCtx, Error> {
    let tower = TowerCtx::new(p, 1, 2, modulus)?;
    let f = SkewPoly::parse(&tower, f)?;
    LoopCtx::new(SemifieldCtx::new(tower, &f)?)
}

/// Orders of Mlt and Inn, with a note when Mlt is all of GL.
fn mlt_inn(l: &LoopCtx, seed: u64) -> Result<(BigUint, BigUint, Option<String>), Error> {
    let g = loops::mlt_group(l, seed, DEGREE_CAP)?;
    let inn = loops::inn_group(l, &g, seed)?;
    let sw = loops::sandwich_bounds(l.semifield());
    let note = if sw.sl_order != sw.gl_order {
        let mlt = g.order();
        Some(if mlt == sw.gl_order {
            format!("|Mlt| = |GL({}, {})|; |SL| = {}", sw.dimension, sw.center_order, sw.sl_order)
        } else if mlt == sw.sl_order {
            format!("|Mlt| = |SL({}, {})|", sw.dimension, sw.center_order)
        } else {
            format!("strictly between SL and GL of degree {}", sw.dimension)
        })
    } else {
        None
    };
    Ok((g.order(), inn.order, note))
}

fn loop_checks(tier: u8, label: &str, l: &LoopCtx, mlt: &str, inn: &str, seed: u64, out: &mut Vec<Check>) -> Result<(), Error> {
    let (m, i, note) = mlt_inn(l, seed)?;
    let mut a = check(tier, &format!("{label} |Mlt|"), mlt, m);
    let mut b = check(tier, &format!("{label} |Inn|"), inn, i);
    if !a.pass {
        a.note = note.clone();
    }
    if !b.pass {
        b.note = note;
    }
    out.push(a);
    out.push(b);
    Ok(())
}

fn tier1(seed: u64, out: &mut Vec<Check>) -> Result<(), Error> {
    let l = build(2, None, "t^2 - g^1")?;
    out.push(check(1, "quat2 loop order", 15, l.order()));
    loop_checks(1, "quat2", &l, "20160", "1344", seed, out)?;
    let inner = autgroup::inner_automorphisms(&l)?;
    let group = inner.group.as_ref().map_or("-".to_string(), |g| g.to_string());
    out.push(check(1, "quat2 inner automorphisms", "Z/3", group));
    out.push(check(1, "quat2 right cyclic", true, loops::cyclicity(&l).right_cyclic));
    let nuc = l.semifield().nuclei();
    out.push(check(
        1,
        "quat2 nuclei (l, m, r, center)",
        "4 4 4 2",
        format!("{} {} {} {}", nuc.left.cardinality, nuc.middle.cardinality, nuc.right.cardinality, nuc.center.cardinality),
    ));

    let mut agree = true;
    for q in (2..=16u64).filter(|&q| arith::prime_power(q).is_some()) {
        for m in 2..=8u32 {
            agree &= census::theta(q, m).is_ok()
                && census::necklace_count(q, m)? * m as u64 + census::theta(q, m)? == arith::checked_pow(q, m).unwrap();
        }
    }
    out.push(check(1, "N(q,m) formulas agree, q <= 16, m <= 8", true, agree));
    let ms: Vec<String> = [2u64, 3, 4, 5]
        .iter()
        .map(|&q| census::gamma_l_orbit_count(q, 2).map(|o| o.orbits.to_string()))
        .collect::<Result<_, _>>()?;
    out.push(check(1, "M(q,2), q = 2..5", "1,2,1,3", ms.join(",")));
    let t = TowerCtx::new(2, 1, 2, None)?;
    out.push(check(1, "cyclic algebra classes (q,m) = (2,2)", 1, census::cyclic_algebra_classes(&t, true)?.classes.len()));
    Ok(())
}

fn tier2(seed: u64, out: &mut Vec<Check>) -> Result<(), Error> {
    let m3: &[u64] = &[2, 2, 1];
    for (label, f, group) in [("quat3 A_1", "t^2 - [0,1]", "Z/4"), ("quat3 A_2", "t^2 - [1,1]", "Dic_2")] {
        let l = build(3, Some(m3), f)?;
        out.push(check(2, &format!("{label} loop order"), 80, l.order()));
        loop_checks(2, label, &l, "12130560", "151632", seed, out)?;
        let auts = autgroup::solve_aut_conditions(l.semifield())?;
        let (_, id) = autgroup::aut_group_structure(l.semifield().tower(), &auts)?;
        out.push(check(2, &format!("{label} Aut parameters"), group, id));
        let c = loops::cyclicity(&l);
        out.push(check(2, &format!("{label} left and right cyclic"), true, c.left_cyclic && c.right_cyclic));
    }
    let t3 = TowerCtx::new(3, 1, 2, None)?;
    let cc = census::cyclic_algebra_classes(&t3, true)?;
    out.push(check(2, "cyclic algebra classes (q,m) = (3,2)", 2, cc.classes.len()));
    let (num, den) = census::numb_bound(3, 2)?.unwrap_or((0, 1));
    out.push(check(2, "classes at (3,2) meet the bound", true, cc.classes.len() as u64 * den == num));

    let m5: &[u64] = &[3, 0, 1];
    for (label, f, min) in [("quat4 a = sqrt2", "t^2 - [0,1]", 12usize), ("quat4 a = 1+2sqrt2", "t^2 - [1,2]", 6)] {
        let l = build(5, Some(m5), f)?;
        out.push(check(2, &format!("{label} loop order"), 624, l.order()));
        loop_checks(2, label, &l, "29016000000", "46500000", seed, out)?;
        let auts = autgroup::solve_aut_conditions(l.semifield())?;
        out.push(check(2, &format!("{label} H count >= {min}"), true, auts.len() >= min));
    }

    let mut enumerated = true;
    for q in (2..=16u64).filter(|&q| arith::prime_power(q).is_some()) {
        for m in 2..=8u32 {
            if arith::checked_pow(q, m).is_some_and(|x| x <= census::ENUMERATION_CAP) {
                enumerated &= census::count_central_irreducible(q, m)?.enumerated.is_some();
            }
        }
    }
    out.push(check(2, "N(q,m) matches enumeration, q^m <= 2^16", true, enumerated));
    Ok(())
}

pub fn checks(tier: u8, seed: u64) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    tier1(seed, &mut out)?;
    if tier >= 2 {
        tier2(seed, &mut out)?;
    }
    Ok(out)
}

pub fn run_verify(tier: u8, format: Format, seed: u64) -> Outcome {
    if !(1..=2).contains(&tier) {
        return Outcome {
            code: crate::EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: unknown tier {tier}\n"),
        };
    }
    let rows = match checks(tier, seed) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: crate::exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let all = rows.iter().all(|c| c.pass);
    let stdout = match format {
        Format::Json => {
            let v = crate::stringify_numbers(json!({ "tier": tier, "all_pass": all, "checks": rows }));
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("tier,check,expected,observed,pass\n");
            for c in &rows {
                s.push_str(&format!("{},\"{}\",{},{},{}\n", c.tier, c.name, c.expected, c.observed, c.pass));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &rows {
                s.push_str(&format!(
                    "{} [{}] {}: expected {}, observed {}{}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.tier,
                    c.name,
                    c.expected,
                    c.observed,
                    c.note.as_ref().map_or(String::new(), |n| format!(" ({n})"))
                ));
            }
            let passed = rows.iter().filter(|c| c.pass).count();
            s.push_str(&format!("{passed}/{} checks pass\n", rows.len()));
            s
        }
    };
    Outcome {
        code: if all { 0 } else { EXIT_FAILED_CHECK },
        stdout,
        stderr: String::new(),
    }
}
