//! Command handlers behind the `skewloop` binary.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use skewloop::autgroup;
use skewloop::census;
use skewloop::gf::parse_field_descriptor;
use skewloop::loops::{self, LoopCtx};
use skewloop::permgroup::DEGREE_CAP;
use skewloop::skewpoly;
use skewloop::{Error, SemifieldCtx, SkewPoly, TowerCtx};

pub mod verify;

pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "skewloop", about = "Loops of Petit semifields: Mlt, Inn, automorphisms, census")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Field descriptor `p^l`, optionally followed by `mod=[c0,...]`.
    #[arg(long, global = true, default_value = "2^2")]
    pub field: String,
    /// Modulus coefficients `[c0,...,1]`, low degree first.
    #[arg(long = "mod", global = true)]
    pub modulus: Option<String>,
    /// σ = x^{p^r}; the fixed field is F_{p^r}.
    #[arg(long = "sigma-r", global = true, default_value_t = 1)]
    pub sigma_r: u32,
    /// Polynomial literal, e.g. "t^2 - g^1".
    #[arg(long, global = true)]
    pub f: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest permutation degree handed to Schreier-Sims.
    #[arg(long = "cap-degree", global = true, default_value_t = DEGREE_CAP)]
    pub cap_degree: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Field and tower data.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Skew polynomial tests.
    Skew {
        #[command(subcommand)]
        cmd: SkewCmd,
    },
    /// Nuclei, centre and Latin square of S_f.
    Semifield {
        #[command(subcommand)]
        cmd: SemifieldCmd,
    },
    /// Multiplicative loop of S_f.
    Loop {
        #[command(subcommand)]
        cmd: LoopCmd,
    },
    /// Counts and classes of semifields and cyclic algebras.
    Census {
        #[command(subcommand)]
        cmd: CensusCmd,
    },
    /// Run the example suite and print a pass/fail matrix.
    Verify {
        #[arg(long, default_value_t = 1)]
        tier: u8,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum FieldCmd {
    /// Order, modulus, generator and automorphisms.
    Info,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SkewCmd {
    /// Irreducibility and right-invariance of --f.
    Irreducible,
    /// Right division of --g by --f.
    Divmod {
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SemifieldCmd {
    /// Nuclei, centre and their sizes.
    Analyze {
        /// Emit the loop's Latin square CSV instead of the report.
        #[arg(long = "latin-square")]
        latin_square: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LoopCmd {
    /// Order of the multiplication group.
    Mlt,
    /// Order of the inner mapping group.
    Inn,
    /// Automorphisms H_{tau,k} of S_f.
    Aut,
    /// Inner automorphisms x -> (c^-1 x) c.
    Inner,
    /// Left and right cyclicity with a generating witness.
    Cyclic,
    /// Subloop orders and the weak Lagrange property.
    Lagrange,
    /// Cayley table of the loop as CSV.
    Latin,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CensusCmd {
    /// N(q,m) by formula and enumeration, and M(q,m) by orbit counting.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// Classes of cyclic algebras over the tower given by --field/--sigma-r.
    Classify,
    /// N, M, numb and the observed classes for given q, n, m.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
}

/// Outcome of a command: exit status plus what goes to stdout/stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegreeCapExceeded { .. } | Error::SizeCapExceeded { .. } | Error::TooLarge(_) | Error::FieldTooLarge(_) => EXIT_CAP,
        Error::InvariantViolated(_) | Error::FormulaMismatch(_) | Error::NotClosed => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome {
        code: exit_code(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Rewrite every JSON number as a decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_flat(v) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(v, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar_text(v));
                    }
                }
            }
        }
        Value::Array(a) => {
            for v in a {
                if is_flat(v) {
                    let _ = writeln!(out, "{pad}- {}", scalar_text(v));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_text(v, indent + 1, out);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar_text(v));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit(format: Format, report: Value) -> Result<String, Error> {
    let report = stringify_numbers(report);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
        Format::Text => {
            let mut s = String::new();
            render_text(&report, 0, &mut s);
            Ok(s)
        }
        Format::Csv => Err(Error::Parse("csv output is only available for latin squares and census tables".into())),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn tower_from(opts: &GlobalOpts) -> Result<TowerCtx, Error> {
    let (p, l, mut modulus) = parse_field_descriptor(&opts.field)?;
    if let Some(m) = &opts.modulus {
        modulus = Some(skewloop::gf::parse_int_list(m)?);
    }
    if opts.sigma_r == 0 || l % opts.sigma_r != 0 {
        return Err(Error::BadTower(format!("r = {} must divide l = {l}", opts.sigma_r)));
    }
    TowerCtx::new(p, opts.sigma_r, l / opts.sigma_r, modulus.as_deref())
}

fn poly_from(opts: &GlobalOpts, tower: &TowerCtx) -> Result<SkewPoly, Error> {
    let f = opts.f.as_deref().ok_or_else(|| Error::Parse("--f is required".into()))?;
    SkewPoly::parse(tower, f)
}

fn semifield_from(opts: &GlobalOpts) -> Result<SemifieldCtx, Error> {
    let tower = tower_from(opts)?;
    let f = poly_from(opts, &tower)?;
    SemifieldCtx::new(tower, &f)
}

/// Refuse a loop whose Mlt degree exceeds the cap, reporting the SL/GL
/// sandwich and the table cost instead.
fn loop_from(opts: &GlobalOpts, sf: SemifieldCtx) -> Result<LoopCtx, Outcome> {
    let n = (sf.size() - 1) as usize;
    let cap = opts.cap_degree.min(loops::LOOP_SIZE_CAP);
    if n > cap {
        let sw = loops::sandwich_bounds(&sf);
        let report = json!({
            "error": format!("loop order {n} exceeds the degree cap {cap}"),
            "degree": n,
            "cap": cap,
            "cost_estimate": {
                "table_entries": (n as u128 * n as u128).to_string(),
                "table_bytes": (n as u128 * n as u128 * 4).to_string(),
                "translations": 2 * n,
            },
            "sandwich": to_value(&sw),
        });
        let mut stdout = emit(opts.format, report.clone()).unwrap_or_else(|_| {
            serde_json::to_string_pretty(&stringify_numbers(report)).unwrap() + "\n"
        });
        if opts.format == Format::Text {
            stdout.push_str(&format!("{} <= |Mlt| <= {}\n", sw.sl_order, sw.gl_order));
        }
        return Err(Outcome {
            code: EXIT_CAP,
            stdout,
            stderr: format!("error: degree {n} exceeds cap {cap}\n"),
        });
    }
    LoopCtx::new(sf).map_err(fail)
}

pub fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    let res = match &cli.command {
        Command::Field { cmd: FieldCmd::Info } => field_info(opts),
        Command::Skew { cmd } => skew(opts, cmd),
        Command::Semifield {
            cmd: SemifieldCmd::Analyze { latin_square },
        } => {
            if *latin_square {
                return loop_cmd(opts, &LoopCmd::Latin);
            }
            semifield_analyze(opts)
        }
        Command::Loop { cmd } => return loop_cmd(opts, cmd),
        Command::Census { cmd } => census_cmd(opts, cmd),
        Command::Verify { tier } => return verify::run_verify(*tier, opts.format, opts.seed),
    };
    match res {
        Ok(s) => Outcome::ok(s),
        Err(e) => fail(e),
    }
}

fn field_info(opts: &GlobalOpts) -> Result<String, Error> {
    let tower = tower_from(opts)?;
    let k = tower.field();
    let (_, kernel) = tower.norm_kernel();
    let report = json!({
        "field": k.descriptor(),
        "characteristic": k.characteristic(),
        "degree": k.degree(),
        "order": k.order(),
        "modulus": k.modulus(),
        "primitive": k.format(k.primitive()),
        "modulus_root_primitive": k.root_is_primitive(),
        "sigma_r": tower.r(),
        "n": tower.n(),
        "fixed_field_order": tower.base_order(),
        "norm_kernel_order": kernel,
    });
    emit(opts.format, report)
}

fn skew(opts: &GlobalOpts, cmd: &SkewCmd) -> Result<String, Error> {
    let tower = tower_from(opts)?;
    let f = poly_from(opts, &tower)?;
    let report = match cmd {
        SkewCmd::Irreducible => {
            let irreducible = skewpoly::is_irreducible(&tower, &f)?;
            let right_invariant = skewpoly::is_right_invariant(&tower, &f)?;
            json!({
                "f": to_value(&f.to_json(&tower)),
                "irreducible": irreducible,
                "right_invariant": right_invariant,
                "admissible": irreducible && !right_invariant,
            })
        }
        SkewCmd::Divmod { g } => {
            let g = SkewPoly::parse(&tower, g)?;
            let (q, r) = skewpoly::right_divmod(&tower, &g, &f)?;
            json!({
                "g": to_value(&g.to_json(&tower)),
                "f": to_value(&f.to_json(&tower)),
                "quotient": to_value(&q.to_json(&tower)),
                "remainder": to_value(&r.to_json(&tower)),
                "quotient_text": q.format(&tower),
                "remainder_text": r.format(&tower),
            })
        }
    };
    emit(opts.format, report)
}

fn semifield_analyze(opts: &GlobalOpts) -> Result<String, Error> {
    let sf = semifield_from(opts)?;
    let nuc = sf.nuclei();
    let sw = loops::sandwich_bounds(&sf);
    let report = json!({
        "f": sf.f().format(sf.tower()),
        "size": sf.size(),
        "nuclei": {
            "left": nuc.left.cardinality,
            "middle": nuc.middle.cardinality,
            "right": nuc.right.cardinality,
            "nucleus": nuc.nucleus.cardinality,
        },
        "center": nuc.center.cardinality,
        "tags": {
            "left": nuc.left.tag,
            "middle": nuc.middle.tag,
            "right": nuc.right.tag,
            "center": nuc.center.tag,
        },
        "right_formula_agrees": nuc.right_formula_agrees,
        "t_powers": to_value(&sf.t_power_diagnostics()),
        "sandwich": to_value(&sw),
    });
    emit(opts.format, report)
}

fn perm_json(p: &skewloop::permgroup::Perm) -> Value {
    Value::Array(p.images().iter().map(|&x| json!(x)).collect())
}

fn loop_cmd(opts: &GlobalOpts, cmd: &LoopCmd) -> Outcome {
    let sf = match semifield_from(opts) {
        Ok(sf) => sf,
        Err(e) => return fail(e),
    };
    if opts.format == Format::Csv && !matches!(cmd, LoopCmd::Latin) {
        return fail(Error::Parse("csv output is only available for latin squares and census tables".into()));
    }
    let l = match loop_from(opts, sf) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let res = loop_report(opts, cmd, &l);
    match res {
        Ok(s) => Outcome::ok(s),
        Err(e) => fail(e),
    }
}

fn loop_report(opts: &GlobalOpts, cmd: &LoopCmd, l: &LoopCtx) -> Result<String, Error> {
    let sf = l.semifield();
    let report = match cmd {
        LoopCmd::Latin => {
            let sq = loops::latin_square(l);
            return match opts.format {
                Format::Csv | Format::Text => Ok(sq.to_csv()),
                Format::Json => emit(
                    Format::Json,
                    json!({ "n": sq.n, "legend": sq.legend, "table": sq.table }),
                ),
            };
        }
        LoopCmd::Mlt => {
            let g = loops::mlt_group(l, opts.seed, opts.cap_degree)?;
            let sw = loops::sandwich_bounds(sf);
            let order = g.order();
            json!({
                "loop_order": l.order(),
                "mlt": to_value(&g.to_json()),
                "sandwich": to_value(&sw),
                "sandwich_holds": sw.holds(&order),
                "equals_sl": order == sw.sl_order,
                "equals_gl": order == sw.gl_order,
            })
        }
        LoopCmd::Inn => {
            let g = loops::mlt_group(l, opts.seed, opts.cap_degree)?;
            let inn = loops::inn_group(l, &g, opts.seed)?;
            let mlt = g.order();
            json!({
                "loop_order": l.order(),
                "mlt_order": mlt.to_string(),
                "inn_order": inn.order.to_string(),
                "mlt_equals_n_times_inn": mlt == &inn.order * BigUint::from(l.order()),
                "sampled_inner_mappings": inn.sampled,
                "full_check_order": inn.full_check_order.map(|x| x.to_string()),
                "chain": to_value(&inn.chain.to_json()),
            })
        }
        LoopCmd::Aut => {
            let auts = autgroup::solve_aut_conditions(sf)?;
            let (_, id) = autgroup::aut_group_structure(sf.tower(), &auts)?;
            let inner = autgroup::inner_automorphisms(l)?;
            let exhaustive = if l.order() <= loops::AUT_SEARCH_CAP {
                Some(loops::loop_automorphisms(l)?.len())
            } else {
                None
            };
            json!({
                "parameters": auts.iter().map(|h| to_value(&h.to_json(sf.tower()))).collect::<Vec<_>>(),
                "order": auts.len(),
                "group": id.to_string(),
                "group_id": to_value(&id),
                "full_group_of_sf": autgroup::is_full_group(sf),
                "composition_law_holds": autgroup::composition_law_holds(sf, &auts),
                "inner_automorphisms": inner.auts.len(),
                "loop_automorphisms_exhaustive": exhaustive,
            })
        }
        LoopCmd::Inner => {
            let inner = autgroup::inner_automorphisms(l)?;
            json!({
                "count": inner.auts.len(),
                "nucleus_order": inner.nucleus_order,
                "expected": inner.expected,
                "all_matched": inner.all_matched,
                "cyclic": inner.cyclic,
                "group": inner.group.as_ref().map(|g| g.to_string()),
                "maps": inner.auts.iter().map(|a| json!({
                    "c": l.format_elem(a.c),
                    "hk": a.hk.map(|h| to_value(&h.to_json(sf.tower()))),
                    "perm": perm_json(&a.perm),
                })).collect::<Vec<_>>(),
            })
        }
        LoopCmd::Cyclic => {
            let c = loops::cyclicity(l);
            json!({
                "loop_order": l.order(),
                "left_cyclic": c.left_cyclic,
                "right_cyclic": c.right_cyclic,
                "left_witness": c.left_witness.map(|i| l.format_elem(i)),
                "right_witness": c.right_witness.map(|i| l.format_elem(i)),
                "left_generators": c.left_generators,
                "right_generators": c.right_generators,
            })
        }
        LoopCmd::Lagrange => to_value(&loops::subloops_and_lagrange(l)?),
    };
    emit(opts.format, report)
}

fn census_cmd(opts: &GlobalOpts, cmd: &CensusCmd) -> Result<String, Error> {
    match cmd {
        CensusCmd::Count { q, m } => {
            let c = census::count_central_irreducible(*q, *m)?;
            let orbits = match census::gamma_l_orbit_count(*q, *m) {
                Ok(o) => Some(o),
                Err(Error::TooLarge(_)) => None,
                Err(e) => return Err(e),
            };
            if opts.format == Format::Csv {
                let mut s = String::from("q,m,theta,N_mobius,N_theta,N_enumerated,M\n");
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    q,
                    m,
                    c.theta,
                    c.mobius,
                    c.via_theta,
                    c.enumerated.map_or(String::new(), |v| v.to_string()),
                    orbits.as_ref().map_or(String::new(), |o| o.orbits.to_string())
                );
                return Ok(s);
            }
            emit(opts.format, json!({ "central": to_value(&c), "orbits": orbits.map(|o| to_value(&o)) }))
        }
        CensusCmd::Classify => {
            let tower = tower_from(opts)?;
            let rep = census::tower_report(&tower)?;
            if opts.format == Format::Csv {
                return Ok(rep.to_csv());
            }
            let cc = census::cyclic_algebra_classes(&tower, false)?;
            emit(opts.format, json!({ "classes": to_value(&cc), "signatures": to_value(&rep.classes) }))
        }
        CensusCmd::Bounds { q, n, m } => {
            let rep = census::bounds_report(*q, *n, *m)?;
            if opts.format == Format::Csv {
                return Ok(rep.to_csv());
            }
            emit(opts.format, to_value(&rep))
        }
    }
}
