//! Command implementations: parse inputs, call the core, build the JSON
//! envelope. A command whose mathematical check comes back false returns
//! status check-failed (exit 1); malformed input is an Err (exit 2).

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use slicegap_core::arf::QuadraticSpace;
use slicegap_core::bredon::{
    bredon_cohomology, bredon_homology, cell_census, cell_lemma_groups, chain_model,
};
use slicegap_core::classes::{
    adams_fixtures, build_d, build_omega, differential_consistency, periodicity_requirements,
    skeleton_deduction, surviving_kervaire_dimensions, PeriodicityOutcome,
};
use slicegap_core::cyclic::{
    detection_image_b, detection_image_h0, kervaire_target, monomial_nonvanishing, CyclicZModule,
    DetectionSymbol,
};
use slicegap_core::equivariant::{
    burnside_product, double_coset_restrict, table_of_marks, Cyclic, GSet,
};
use slicegap_core::fgl::{hazewinkel_log, mu_cn_check, Fgl, FormalAModule, Height};
use slicegap_core::intmat::IntMatrix;
use slicegap_core::mackey::MackeyCoeff;
use slicegap_core::reps::{rep_decompose, RealRep};
use slicegap_core::ring::{GfPrime, IntRing, RatRing, Ring};
use slicegap_core::simplicial::sphere_simplicial;
use slicegap_core::slices::{gap_check, norm_wedge, refinement_census, smash, SliceCell};

use crate::render::{self, CommandResult, Status};

type CmdResult = Result<CommandResult, String>;

fn ok(command: &str, params: Value, result: Value) -> CmdResult {
    Ok(CommandResult { command: command.into(), params, result, status: Status::Ok, elapsed_ms: 0 })
}

fn checked(command: &str, params: Value, result: Value, pass: bool) -> CmdResult {
    Ok(CommandResult {
        command: command.into(),
        params,
        result,
        status: if pass { Status::Ok } else { Status::CheckFailed },
        elapsed_ms: 0,
    })
}

fn group(order: u32) -> Result<Cyclic, String> {
    Cyclic::new(order).map_err(|e| e.to_string())
}

fn parse_json(s: &str) -> Result<Value, String> {
    serde_json::from_str(s).map_err(|e| format!("bad JSON: {}", e))
}

fn parse_rep(group: Cyclic, s: &str) -> Result<RealRep, String> {
    let v = parse_json(s)?;
    let a = v.get("a").and_then(Value::as_u64).unwrap_or(0) as u32;
    let b = v.get("b").and_then(Value::as_u64).unwrap_or(0) as u32;
    let c: Vec<u32> = match v.get("c") {
        Some(Value::Array(arr)) => arr.iter().map(|x| x.as_u64().unwrap_or(0) as u32).collect(),
        _ => vec![],
    };
    let mut c = c;
    let slots = group.half().saturating_sub(1) as usize;
    if c.len() < slots {
        c.resize(slots, 0);
    }
    RealRep::new(group, a, b, c).map_err(|e| e.to_string())
}

fn rep_json(v: &RealRep) -> Value {
    json!({"a": v.a, "b": v.b, "c": v.c, "dim": v.dim(), "pretty": format!("{}", v)})
}

fn parse_int_matrix(v: &Value) -> Result<IntMatrix, String> {
    let rows = v.as_array().ok_or("matrix must be an array of rows")?;
    let data: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| "row must be an array".to_string())
                .map(|cells| cells.iter().map(|c| c.as_i64().unwrap_or(0)).collect())
        })
        .collect::<Result<_, _>>()?;
    Ok(IntMatrix::from_rows(&data))
}

fn gset_json(s: &GSet) -> Value {
    let mut m = serde_json::Map::new();
    for (d, c) in &s.orbits {
        m.insert(d.to_string(), json!(c));
    }
    json!({"orbits": Value::Object(m), "pretty": format!("{}", s)})
}

fn symbol_json(s: &DetectionSymbol) -> Value {
    json!({
        "name": s.name,
        "s": s.s,
        "t": s.t,
        "uExponent": s.u_exp,
        "degreeConsistent": s.degree_consistent(),
    })
}

// ---------------------------------------------------------------------------
// arf
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ArfArgs {
    /// Quadratic space as JSON `{"g": 1, "qBasis": [0,0], "B": [[0,1],[1,0]]}`
    #[arg(long, conflicts_with = "hyperbolic")]
    q: Option<String>,
    /// Use the hyperbolic plane
    #[arg(long)]
    hyperbolic: bool,
}

pub fn run_arf(a: ArfArgs) -> CmdResult {
    let (space, params) = if a.hyperbolic {
        (QuadraticSpace::hyperbolic(), json!({"hyperbolic": true}))
    } else {
        let src = a.q.ok_or("pass --q or --hyperbolic")?;
        let v = parse_json(&src)?;
        let qb: Vec<bool> = v
            .get("qBasis")
            .and_then(Value::as_array)
            .ok_or("missing qBasis")?
            .iter()
            .map(|x| x.as_u64().unwrap_or(0) == 1)
            .collect();
        if let Some(g) = v.get("g").and_then(Value::as_u64) {
            if g as usize * 2 != qb.len() {
                return Err("g does not match the qBasis length".into());
            }
        }
        let b: Vec<Vec<bool>> = v
            .get("B")
            .and_then(Value::as_array)
            .ok_or("missing B")?
            .iter()
            .map(|r| r.as_array().map(|cells| cells.iter().map(|c| c.as_u64().unwrap_or(0) == 1).collect()))
            .collect::<Option<_>>()
            .ok_or("bad B")?;
        (QuadraticSpace::new(qb, b).map_err(|e| e.to_string())?, v)
    };
    let arf = space.arf().map_err(|e| e.to_string())?;
    let witt = space.witt_class().map_err(|e| e.to_string())?;
    let (zeros, ones) = space.value_histogram();
    ok(
        "arf",
        params,
        json!({
            "arf": arf as u8,
            "wittClass": witt as u8,
            "valueHistogram": {"0": zeros, "1": ones},
        }),
    )
}

// ---------------------------------------------------------------------------
// fgl
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, ValueEnum)]
pub enum LawChoice {
    Ga,
    Gm,
    Hazewinkel,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RingChoice {
    Integers,
    Rationals,
    F2,
    F3,
    F5,
}

#[derive(Args)]
pub struct FglArgs {
    #[command(subcommand)]
    op: FglOp,
}

#[derive(Subcommand)]
pub enum FglOp {
    /// Residuals of the unit/commutativity/associativity axioms
    Verify {
        #[arg(long, value_enum, default_value = "gm")]
        law: LawChoice,
        #[arg(long, value_enum, default_value = "integers")]
        ring: RingChoice,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        /// e for the Hazewinkel law
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// The k-series `[k](t)`
    Kseries {
        #[arg(long, value_enum, default_value = "gm")]
        law: LawChoice,
        #[arg(long, value_enum, default_value = "integers")]
        ring: RingChoice,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Height over a prime field (Hazewinkel laws are reduced mod pi)
    Height {
        #[arg(long, value_enum, default_value = "gm")]
        law: LawChoice,
        #[arg(long, value_enum, default_value = "f2")]
        ring: RingChoice,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Logarithm over the rationals
    Log {
        #[arg(long, value_enum, default_value = "gm")]
        law: LawChoice,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// Conjugate law and its witness strict isomorphism
    Conjugate {
        #[arg(long, value_enum, default_value = "gm")]
        law: LawChoice,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// The Hazewinkel logarithm and functional-equation residual
    Hazewinkel {
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 10)]
        cutoff: u32,
    },
    /// Verify the conjugation and theta-composite identities
    Mucn {
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 10)]
        cutoff: u32,
        /// 2-adic precision (bits)
        #[arg(long, default_value_t = 16)]
        precision: u32,
    },
}

fn law_over_int(law: LawChoice, cutoff: u32) -> Result<Fgl<IntRing>, String> {
    match law {
        LawChoice::Ga => Ok(Fgl::additive(IntRing, cutoff)),
        LawChoice::Gm => Ok(Fgl::multiplicative(IntRing, 1.into(), cutoff)),
        LawChoice::Hazewinkel => Err("hazewinkel law lives over Z_2[zeta]; use --ring f2 (reduction) or the mucn/hazewinkel ops".into()),
    }
}

fn law_over_fp(law: LawChoice, p: u64, cutoff: u32, e: u32) -> Result<Fgl<GfPrime>, String> {
    let fp = GfPrime::new(p).map_err(|e| e.to_string())?;
    match law {
        LawChoice::Ga => Ok(Fgl::additive(fp, cutoff)),
        LawChoice::Gm => Ok(Fgl::multiplicative(fp, 1, cutoff)),
        LawChoice::Hazewinkel => {
            if p != 2 {
                return Err("the Hazewinkel reduction lives over F_2".into());
            }
            let m = FormalAModule::new(e, cutoff).map_err(|err| err.to_string())?;
            m.reduction_mod_pi().map_err(|err| err.to_string())
        }
    }
}

pub fn run_fgl(a: FglArgs) -> CmdResult {
    match a.op {
        FglOp::Verify { law, ring, cutoff, e } => {
            let params = json!({"cutoff": cutoff, "e": e});
            let (valid, residuals) = match ring {
                RingChoice::Integers => {
                    let f = law_over_int(law, cutoff)?;
                    let r = f.verify().map_err(|e| e.to_string())?;
                    (r.is_valid(), json!({
                        "unit": render::series(&r.unit),
                        "commutativity": render::series(&r.commutativity),
                        "associativity": render::series(&r.associativity),
                    }))
                }
                RingChoice::Rationals => {
                    let f = match law {
                        LawChoice::Ga => Fgl::additive(RatRing, cutoff),
                        LawChoice::Gm => Fgl::multiplicative(RatRing, Ring::from_i64(&RatRing, 1), cutoff),
                        LawChoice::Hazewinkel => return Err("use --ring f2 for the hazewinkel reduction".into()),
                    };
                    let r = f.verify().map_err(|e| e.to_string())?;
                    (r.is_valid(), json!({"allZero": r.is_valid()}))
                }
                RingChoice::F2 | RingChoice::F3 | RingChoice::F5 => {
                    let p = match ring {
                        RingChoice::F2 => 2,
                        RingChoice::F3 => 3,
                        _ => 5,
                    };
                    let f = law_over_fp(law, p, cutoff, e)?;
                    let r = f.verify().map_err(|e| e.to_string())?;
                    (r.is_valid(), json!({"allZero": r.is_valid()}))
                }
            };
            checked("fgl verify", params, residuals, valid)
        }
        FglOp::Kseries { law, ring, k, cutoff, e } => {
            let params = json!({"k": k, "cutoff": cutoff});
            let out = match ring {
                RingChoice::Integers => {
                    let f = law_over_int(law, cutoff)?;
                    render::series(&f.k_series(k).map_err(|e| e.to_string())?)
                }
                RingChoice::Rationals => {
                    let f = match law {
                        LawChoice::Ga => Fgl::additive(RatRing, cutoff),
                        LawChoice::Gm => Fgl::multiplicative(RatRing, Ring::from_i64(&RatRing, 1), cutoff),
                        LawChoice::Hazewinkel => return Err("use --ring f2".into()),
                    };
                    render::series(&f.k_series(k).map_err(|e| e.to_string())?)
                }
                RingChoice::F2 | RingChoice::F3 | RingChoice::F5 => {
                    let p = match ring {
                        RingChoice::F2 => 2,
                        RingChoice::F3 => 3,
                        _ => 5,
                    };
                    let f = law_over_fp(law, p, cutoff, e)?;
                    render::series(&f.k_series(k).map_err(|e| e.to_string())?)
                }
            };
            ok("fgl kseries", params, out)
        }
        FglOp::Height { law, ring, cutoff, e } => {
            let p = match ring {
                RingChoice::F2 => 2u64,
                RingChoice::F3 => 3,
                RingChoice::F5 => 5,
                _ => return Err("height needs a prime field".into()),
            };
            let f = law_over_fp(law, p, cutoff, e)?;
            let h = f.height().map_err(|e| e.to_string())?;
            let out = match h {
                Height::Finite(n) => json!({"height": n}),
                Height::Infinite => json!({"height": "infinite"}),
            };
            ok("fgl height", json!({"p": p, "cutoff": cutoff, "e": e}), out)
        }
        FglOp::Log { law, cutoff } => {
            let f = match law {
                LawChoice::Ga => Fgl::additive(RatRing, cutoff),
                LawChoice::Gm => Fgl::multiplicative(RatRing, Ring::from_i64(&RatRing, 1), cutoff),
                LawChoice::Hazewinkel => return Err("use `fgl hazewinkel` for the A-module logarithm".into()),
            };
            let l = f.logarithm().map_err(|e| e.to_string())?;
            ok("fgl log", json!({"cutoff": cutoff}), render::series(&l))
        }
        FglOp::Conjugate { law, cutoff } => {
            let f = law_over_int(law, cutoff)?;
            let (bar, witness) = f.conjugate().map_err(|e| e.to_string())?;
            ok(
                "fgl conjugate",
                json!({"cutoff": cutoff}),
                json!({"conjugate": render::series(bar.series()), "witness": render::series(&witness)}),
            )
        }
        FglOp::Hazewinkel { e, cutoff } => {
            let l = hazewinkel_log(e, cutoff);
            let resid = slicegap_core::fgl::hazewinkel_functional_residual(e, cutoff);
            let module = FormalAModule::new(e, cutoff).map_err(|err| err.to_string())?;
            let integral = module.integrality().is_ok();
            checked(
                "fgl hazewinkel",
                json!({"e": e, "cutoff": cutoff}),
                json!({
                    "log": render::series(&l),
                    "functionalEquationResidualZero": resid.is_zero(),
                    "lawIntegral": integral,
                    "law": render::series(module.law.series()),
                }),
                resid.is_zero() && integral,
            )
        }
        FglOp::Mucn { e, cutoff, precision } => {
            let rep = mu_cn_check(e, cutoff, precision).map_err(|err| err.to_string())?;
            let pass = rep.all_pass();
            checked(
                "fgl mucn",
                json!({"e": e, "cutoff": cutoff, "precision": precision}),
                json!({
                    "conjugationIdentity": rep.conjugation_identity,
                    "thetaCompositeIdentity": rep.theta_composite_identity,
                    "cocycleLaw": rep.cocycle_law,
                    "firstFailure": rep.first_failure.map(|(n, d)| json!({"identity": n, "degree": d})),
                }),
                pass,
            )
        }
    }
}

// ---------------------------------------------------------------------------
// cohomology / detect / kervaire-target
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct CohomologyArgs {
    /// Group order m
    #[arg(long)]
    m: u32,
    /// Module spec: "trivial:<rank>", "sign", "zk:<k>" (`A u^k`, `A = Z[z]/(z^4+1)`),
    /// or JSON `{"rank": r, "gamma": [[..]], "rels": [[..]]}`
    #[arg(long)]
    module: String,
    /// Cohomological degree s
    #[arg(long)]
    degree: u32,
}

pub fn run_cohomology(a: CohomologyArgs) -> CmdResult {
    let module = if let Some(rank) = a.module.strip_prefix("trivial:") {
        let rank: usize = rank.parse().map_err(|_| "bad rank")?;
        CyclicZModule::trivial(a.m, rank)
    } else if a.module == "sign" {
        let mut g = IntMatrix::zero(1, 1);
        g.set(0, 0, (-1).into());
        CyclicZModule::new(a.m, 1, IntMatrix::zero(1, 0), g).map_err(|e| e.to_string())?
    } else if let Some(k) = a.module.strip_prefix("zk:") {
        let k: i64 = k.parse().map_err(|_| "bad exponent")?;
        if a.m != 8 {
            return Err("zk modules are C_8-modules on Z[z]/(z^4+1)".into());
        }
        let gamma = slicegap_core::cyclic::mult_by_zk(k);
        CyclicZModule::new(8, 4, IntMatrix::zero(4, 0), gamma).map_err(|e| e.to_string())?
    } else {
        let v = parse_json(&a.module)?;
        let rank = v.get("rank").and_then(Value::as_u64).ok_or("missing rank")? as usize;
        let gamma = parse_int_matrix(v.get("gamma").ok_or("missing gamma")?)?;
        let rels = match v.get("rels") {
            Some(r) => parse_int_matrix(r)?,
            None => IntMatrix::zero(rank, 0),
        };
        CyclicZModule::new(a.m, rank, rels, gamma).map_err(|e| e.to_string())?
    };
    let h = module.cohomology(a.degree);
    ok(
        "cohomology",
        json!({"m": a.m, "module": a.module, "degree": a.degree}),
        render::abgroup(&h),
    )
}

#[derive(Args)]
pub struct DetectArgs {
    #[arg(long)]
    p: u64,
    /// b_j index; omit for the h_0 image
    #[arg(long)]
    j: Option<u32>,
    /// Exponents i_0, i_1, ... for a monomial nonvanishing check
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    monomial: Option<Vec<u32>>,
}

pub fn run_detect(a: DetectArgs) -> CmdResult {
    if let Some(exps) = a.monomial {
        let (nonzero, sym) = monomial_nonvanishing(a.p, &exps);
        return checked(
            "detect",
            json!({"p": a.p, "monomial": exps}),
            json!({"nonzero": nonzero, "image": symbol_json(&sym)}),
            nonzero,
        );
    }
    let sym = match a.j {
        Some(j) => detection_image_b(a.p, j),
        None => detection_image_h0(a.p),
    };
    checked(
        "detect",
        json!({"p": a.p, "j": a.j}),
        symbol_json(&sym),
        sym.degree_consistent(),
    )
}

#[derive(Args)]
pub struct KervaireTargetArgs {
    #[arg(long)]
    j: u32,
}

pub fn run_kervaire_target(a: KervaireTargetArgs) -> CmdResult {
    if a.j < 1 {
        return Err("j must be >= 1".into());
    }
    let t = kervaire_target(a.j);
    checked(
        "kervaire-target",
        json!({"j": a.j}),
        json!({
            "group": render::abgroup(&t.group),
            "nonzero": t.nonzero,
            "actionTrivialRange": t.in_range,
        }),
        t.nonzero || !t.in_range,
    )
}

// ---------------------------------------------------------------------------
// gset / rep
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct GsetArgs {
    #[command(subcommand)]
    op: GsetOp,
}

#[derive(Subcommand)]
pub enum GsetOp {
    /// Res_K Ind_H X for an H-set X
    Restrict {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u32,
        /// orbit label d (the H-set H/C_d)
        #[arg(long)]
        orbit: u32,
    },
    /// Table of marks
    Marks {
        #[arg(long)]
        group: u32,
    },
    /// Product of two orbits in the Burnside ring
    Product {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
}

pub fn run_gset(args: GsetArgs) -> CmdResult {
    match args.op {
        GsetOp::Restrict { group: order, h, k, orbit } => {
            let g = group(order)?;
            let out = double_coset_restrict(g, h, k, &GSet::orbit(orbit)).map_err(|e| e.to_string())?;
            ok("gset restrict", json!({"group": order, "h": h, "k": k, "orbit": orbit}), gset_json(&out))
        }
        GsetOp::Marks { group: order } => {
            let g = group(order)?;
            let t = table_of_marks(g);
            ok(
                "gset marks",
                json!({"group": order}),
                json!({"divisors": g.divisors(), "table": t}),
            )
        }
        GsetOp::Product { group: order, a, b } => {
            let g = group(order)?;
            let out = burnside_product(g, &GSet::orbit(a), &GSet::orbit(b));
            ok("gset product", json!({"group": order, "a": a, "b": b}), gset_json(&out))
        }
    }
}

#[derive(Args)]
pub struct RepArgs {
    #[command(subcommand)]
    op: RepOp,
}

#[derive(Subcommand)]
pub enum RepOp {
    /// Decompose an integer orthogonal matrix of finite order
    Decompose {
        #[arg(long)]
        group: u32,
        /// JSON matrix, e.g. `[[0,-1],[1,0]]`
        #[arg(long)]
        matrix: String,
    },
    /// dim V^H
    Fixed {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        h: u32,
    },
    /// Induce a representation of C_h up to C_group
    Ind {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        rep: String,
    },
    /// Restrict a representation to C_h
    Res {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        h: u32,
    },
    /// Orientability (det of the generator action)
    Orientable {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        rep: String,
    },
}

pub fn run_rep(args: RepArgs) -> CmdResult {
    match args.op {
        RepOp::Decompose { group: order, matrix } => {
            let g = group(order)?;
            let m = parse_int_matrix(&parse_json(&matrix)?)?;
            let v = rep_decompose(g, &m).map_err(|e| e.to_string())?;
            ok("rep decompose", json!({"group": order}), rep_json(&v))
        }
        RepOp::Fixed { group: order, rep, h } => {
            let g = group(order)?;
            let v = parse_rep(g, &rep)?;
            ok(
                "rep fixed",
                json!({"group": order, "rep": rep_json(&v), "h": h}),
                json!({"fixedDim": v.fixed_dim(h)}),
            )
        }
        RepOp::Ind { group: order, h, rep } => {
            let g = group(order)?;
            let sub = group(h)?;
            let v = parse_rep(sub, &rep)?;
            let ind = v.induce(g).map_err(|e| e.to_string())?;
            ok("rep ind", json!({"group": order, "h": h, "rep": rep_json(&v)}), rep_json(&ind))
        }
        RepOp::Res { group: order, rep, h } => {
            let g = group(order)?;
            let v = parse_rep(g, &rep)?;
            let res = v.restrict(h).map_err(|e| e.to_string())?;
            ok("rep res", json!({"group": order, "h": h, "rep": rep_json(&v)}), rep_json(&res))
        }
        RepOp::Orientable { group: order, rep } => {
            let g = group(order)?;
            let v = parse_rep(g, &rep)?;
            ok(
                "rep orientable",
                json!({"group": order, "rep": rep_json(&v)}),
                json!({"orientable": v.is_orientable()}),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// bredon / cell-lemma
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, ValueEnum)]
pub enum CoeffChoice {
    #[value(alias = "constZ")]
    ConstZ,
    Burnside,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VarianceChoice {
    Homology,
    Cohomology,
}

#[derive(Args)]
pub struct BredonArgs {
    #[arg(long)]
    group: u32,
    /// Representation as JSON `{"a":1,"b":1,"c":[1,1,1]}`
    #[arg(long)]
    rep: String,
    /// Representation to subtract (for virtual spheres)
    #[arg(long)]
    neg_rep: Option<String>,
    /// Extra integer shift (-1 for irregular slice cells)
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
    #[arg(long, value_enum, default_value = "const-z")]
    coeff: CoeffChoice,
    #[arg(long, value_enum, default_value = "homology")]
    variance: VarianceChoice,
    /// Also include the cell census and the simplicial cross-check (dim <= 6)
    #[arg(long)]
    census: bool,
}

pub fn run_bredon(a: BredonArgs) -> CmdResult {
    let g = group(a.group)?;
    let pos = parse_rep(g, &a.rep)?;
    let neg = a.neg_rep.as_deref().map(|s| parse_rep(g, s)).transpose()?;
    let model = chain_model(&pos, neg.as_ref(), a.shift, None).map_err(|e| format!("{}", e))?;
    let coeff = match a.coeff {
        CoeffChoice::ConstZ => MackeyCoeff::constant_z(g),
        CoeffChoice::Burnside => MackeyCoeff::burnside(g),
    };
    let groups = match a.variance {
        VarianceChoice::Homology => bredon_homology(&model, &coeff),
        VarianceChoice::Cohomology => bredon_cohomology(&model, &coeff),
    };
    let mut result = json!({"groups": render::graded_groups(&groups)});
    if a.census && neg.is_none() && a.shift == 0 {
        let census = cell_census(&pos);
        let mut cm = serde_json::Map::new();
        for (dim, (iso, count)) in &census.entries {
            cm.insert(dim.to_string(), json!({"isotropy": iso, "cells": count}));
        }
        result["census"] = Value::Object(cm);
        if pos.dim() <= 6 {
            let oracle = sphere_simplicial(&pos, 6)
                .map_err(|e| e.to_string())?
                .chain_complex()
                .map_err(|e| e.to_string())?;
            let og = match a.variance {
                VarianceChoice::Homology => bredon_homology(&oracle, &coeff),
                VarianceChoice::Cohomology => bredon_cohomology(&oracle, &coeff),
            };
            result["simplicialOracleAgrees"] = json!(og == groups);
        }
    }
    ok(
        "bredon",
        json!({
            "group": a.group,
            "rep": rep_json(&pos),
            "negRep": neg.as_ref().map(rep_json),
            "shift": a.shift,
            "coeff": match a.coeff { CoeffChoice::ConstZ => "constZ", CoeffChoice::Burnside => "burnside" },
            "variance": match a.variance { VarianceChoice::Homology => "homology", VarianceChoice::Cohomology => "cohomology" },
        }),
        result,
    )
}

#[derive(Args)]
pub struct CellLemmaArgs {
    #[arg(long)]
    group: u32,
    /// Subgroup order
    #[arg(long)]
    k: u32,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
}

pub fn run_cell_lemma(a: CellLemmaArgs) -> CmdResult {
    let g = group(a.group)?;
    let groups = cell_lemma_groups(g, a.k, a.m).map_err(|e| format!("{}", e))?;
    let vanish = groups.values().all(|h| h.is_zero());
    checked(
        "cell-lemma",
        json!({"group": a.group, "k": a.k, "m": a.m}),
        json!({"result": vanish, "groups": render::graded_groups(&groups)}),
        vanish,
    )
}

// ---------------------------------------------------------------------------
// slice / gap / classes
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct SliceArgs {
    #[command(subcommand)]
    op: SliceOp,
}

#[derive(Subcommand)]
pub enum SliceOp {
    /// Dimension and cell window of a slice cell
    Dim {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// The S^{-1}-shifted case
        #[arg(long)]
        irregular: bool,
    },
    /// Smash product of two regular slice cells
    Smash {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        h: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Norm distributivity census
    NormWedge {
        #[arg(long)]
        group: u32,
        #[arg(long)]
        h: u32,
        /// Index set of exponents, comma separated
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<i64>,
        #[arg(long, default_value_t = 64)]
        dmax: i64,
    },
    /// Refinement wedge census up to a dimension bound
    Census {
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 16)]
        dmax: i64,
    },
    /// Slice spectral sequence support test
    Support {
        #[arg(long)]
        group: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Gap check over the census
    Gap(GapArgs),
}

#[derive(Args)]
pub struct GapArgs {
    #[arg(long, default_value_t = 3)]
    pub e: u32,
    #[arg(long, default_value_t = 19)]
    pub l: i64,
    #[arg(long, default_value_t = 16)]
    pub tmax: i64,
}

pub fn run_slice(args: SliceArgs) -> CmdResult {
    match args.op {
        SliceOp::Dim { group: order, k, m, irregular } => {
            let g = group(order)?;
            let cell = SliceCell::new(g, k, m, !irregular).map_err(|e| e.to_string())?;
            let (lo, hi) = cell.cw_range();
            ok(
                "slice dim",
                json!({"group": order, "k": k, "m": m, "regular": !irregular}),
                json!({
                    "dimension": cell.dimension(),
                    "isotropic": cell.isotropic(),
                    "cellWindow": [lo, hi],
                    "pretty": format!("{}", cell),
                }),
            )
        }
        SliceOp::Smash { group: order, h, a, k, b } => {
            let g = group(order)?;
            let s1 = SliceCell::new(g, h, a, true).map_err(|e| e.to_string())?;
            let s2 = SliceCell::new(g, k, b, true).map_err(|e| e.to_string())?;
            let w = smash(&s1, &s2).map_err(|e| e.to_string())?;
            ok(
                "slice smash",
                json!({"group": order, "h": h, "a": a, "k": k, "b": b}),
                render::wedge(&w),
            )
        }
        SliceOp::NormWedge { group: order, h, degrees, dmax } => {
            let g = group(order)?;
            let w = norm_wedge(g, h, &degrees, dmax).map_err(|e| e.to_string())?;
            ok(
                "slice norm-wedge",
                json!({"group": order, "h": h, "degrees": degrees, "dmax": dmax}),
                render::wedge(&w),
            )
        }
        SliceOp::Census { e, dmax } => {
            let census = refinement_census(e, dmax).map_err(|err| err.to_string())?;
            let mut m = serde_json::Map::new();
            for (dim, w) in &census {
                m.insert(dim.to_string(), render::wedge(w));
            }
            ok("slice census", json!({"e": e, "dmax": dmax}), Value::Object(m))
        }
        SliceOp::Support { group: order, s, t } => {
            let inside = slicegap_core::slices::slice_ss_support(order, s, t);
            ok(
                "slice support",
                json!({"group": order, "s": s, "t": t}),
                json!({"inside": inside}),
            )
        }
        SliceOp::Gap(a) => run_gap(a),
    }
}

pub fn run_gap(a: GapArgs) -> CmdResult {
    let r = gap_check(a.e, a.l, a.tmax, (-3, -1)).map_err(|e| e.to_string())?;
    checked(
        "gap",
        json!({"e": a.e, "l": a.l, "tmax": a.tmax}),
        json!({
            "result": r.all_vanish,
            "cellsChecked": r.cells_checked,
            "failures": r.failures.iter().map(|f| json!({
                "t": f.t, "twist": f.twist, "m": f.twisted_m,
            })).collect::<Vec<_>>(),
        }),
        r.all_vanish,
    )
}

#[derive(Args)]
pub struct ClassesArgs {
    #[command(subcommand)]
    op: ClassesOp,
}

#[derive(Subcommand)]
pub enum ClassesOp {
    /// The class D and its degree 19 rho_8
    #[command(alias = "D")]
    D,
    /// omega = (Delta_1)^{2^{k+1}} v and its integer degree
    Omega {
        #[arg(long, default_value_t = 4)]
        k: u32,
    },
    /// Bidegree consistency of the slice differential
    Diffcheck {
        #[arg(long, default_value_t = 3)]
        e: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Periodicity requirements: minimal k for (k1, k2, k3)
    Periodicity {
        #[arg(long, default_value_t = 4)]
        k1: u32,
        #[arg(long, default_value_t = 2)]
        k2: u32,
        #[arg(long, default_value_t = 1)]
        k3: u32,
    },
    /// Does the vanishing-line deduction kill dimension 2^j - 2?
    Deduce {
        #[arg(long)]
        j: u32,
    },
    /// Low-degree Adams chart fixtures
    Adams {
        #[arg(long, default_value_t = 64)]
        tmax: i64,
    },
}

pub fn run_classes(args: ClassesArgs) -> CmdResult {
    match args.op {
        ClassesOp::D => {
            let d = build_d();
            let pass = d.degree.as_rho_multiple() == Some(19);
            checked(
                "classes D",
                json!({}),
                json!({"result": format!("{}", d.degree), "rhoMultiple": d.degree.as_rho_multiple()}),
                pass,
            )
        }
        ClassesOp::Omega { k } => {
            if k > 50 {
                return Err("k must be <= 50".into());
            }
            let omega = build_omega(k);
            let deg = omega.degree.as_integer();
            checked(
                "classes omega",
                json!({"k": k}),
                json!({"degree": deg, "name": omega.name}),
                deg == Some(1i64 << (k + 4)),
            )
        }
        ClassesOp::Diffcheck { e, k } => {
            if e == 0 || e > 6 || k == 0 || k > 50 {
                return Err("need 1 <= e <= 6 and 1 <= k <= 50".into());
            }
            let c = differential_consistency(e, k);
            checked(
                "classes diffcheck",
                json!({"e": e, "k": k}),
                json!({"r": c.r, "filtrationOk": c.filtration_ok, "degreeOk": c.degree_ok}),
                c.passes(),
            )
        }
        ClassesOp::Periodicity { k1, k2, k3 } => {
            let r = periodicity_requirements(k1, k2, k3);
            let (outcome, pass) = match r.outcome {
                PeriodicityOutcome::MinimalK(k) => (json!({"minimalK": k}), true),
                PeriodicityOutcome::Fail => (json!({"minimalK": "FAIL"}), false),
            };
            checked(
                "classes periodicity",
                json!({"k1": k1, "k2": k2, "k3": k3}),
                json!({
                    "outcome": outcome,
                    "divisibility": r.divisibility.iter().map(|row| json!({
                        "subgroup": row.subgroup,
                        "k": row.k,
                        "witness": row.witness,
                        "degreeOk": row.degree_ok,
                    })).collect::<Vec<_>>(),
                }),
                pass && r.divisibility.iter().all(|row| row.degree_ok),
            )
        }
        ClassesOp::Deduce { j } => {
            if j > 62 {
                return Err("j must be <= 62".into());
            }
            let killed = skeleton_deduction(j);
            ok(
                "classes deduce",
                json!({"j": j}),
                json!({
                    "dimension": (1i64 << j) - 2,
                    "killed": killed,
                    "survivingDimensions": surviving_kervaire_dimensions(),
                }),
            )
        }
        ClassesOp::Adams { tmax } => {
            let fx = adams_fixtures(tmax);
            ok(
                "classes adams",
                json!({"tmax": tmax}),
                json!({
                    "oneLine": fx.one_line.iter().map(|(j, t)| json!({"j": j, "t": t})).collect::<Vec<_>>(),
                    "twoLine": fx.two_line.iter().map(|c| json!({
                        "name": c.name(), "s": c.s, "t": c.t, "survivesE3": c.survives_e3,
                    })).collect::<Vec<_>>(),
                    "hopfOneDimensions": fx.hopf_one_dimensions,
                    "d2Rules": fx.d2_rules,
                }),
            )
        }
    }
}
