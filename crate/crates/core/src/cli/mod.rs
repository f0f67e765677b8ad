//! Command-line front end: one job per config file.

pub mod config;
pub mod emit;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cfun::{CError, CFunction, ExactPoint};
use crate::harmonic::{self, Decay, HarmonicError, QuadratureGrid};
use crate::heckealg::{AlgebraError, HeckeAlgebra, NForm};
use crate::lattice::IVec;
use crate::laurent::Laurent;
use crate::linalg::CVec;
use crate::repmod::{self, FinRep, Induced, RepError};
use crate::rootdata::{self, DatumError, Parabolic, RootDatum};
use crate::torus::TorusPoint;

pub use config::{parse_config, JobConfig, Params};
pub use emit::{emit, Cell, Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn validation(m: impl Into<String>) -> Self {
        CliError { code: EXIT_VALIDATION, kind: "validation", message: m.into() }
    }
    pub fn numeric(m: impl Into<String>) -> Self {
        CliError { code: EXIT_NUMERIC, kind: "numeric-precondition", message: m.into() }
    }
    pub fn unsupported(m: impl Into<String>) -> Self {
        CliError { code: EXIT_UNSUPPORTED, kind: "unsupported", message: m.into() }
    }
    pub fn io(m: impl Into<String>) -> Self {
        CliError { code: EXIT_IO, kind: "io", message: m.into() }
    }
    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"code\":{},\"error\":{},\"message\":{}}}",
            self.code,
            serde_json::to_string(self.kind).expect("string"),
            serde_json::to_string(&self.message).expect("string")
        )
    }
}

impl From<DatumError> for CliError {
    fn from(e: DatumError) -> Self {
        CliError::validation(e.to_string())
    }
}
impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::validation(e.to_string())
    }
}
impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Shape(_) | RepError::RelationFailed(..) | RepError::BadTwist => CliError::validation(e.to_string()),
            _ => CliError::numeric(e.to_string()),
        }
    }
}
impl From<CError> for CliError {
    fn from(e: CError) -> Self {
        match e {
            CError::Unsupported(_) => CliError::unsupported(e.to_string()),
            CError::PoleAtPoint { .. } => CliError::numeric(e.to_string()),
        }
    }
}
impl From<HarmonicError> for CliError {
    fn from(e: HarmonicError) -> Self {
        match e {
            HarmonicError::Rep(r) => r.into(),
            HarmonicError::CFun(c) => c.into(),
            other => CliError::numeric(other.to_string()),
        }
    }
}

/// Result of a job: the report and the exit code it should produce.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

fn ok(report: Report) -> Result<Outcome, CliError> {
    Ok(Outcome { report, code: EXIT_OK })
}

fn datum(cfg: &JobConfig) -> Result<RootDatum, CliError> {
    match (&cfg.preset, &cfg.datum) {
        (Some(p), _) => Ok(RootDatum::preset(p)?),
        (_, Some(raw)) => Ok(RootDatum::new(raw.clone())?),
        _ => Err(CliError::validation("preset or datum required")),
    }
}

fn algebra(cfg: &JobConfig) -> Result<HeckeAlgebra, CliError> {
    Ok(HeckeAlgebra::new(datum(cfg)?, &cfg.labels())?)
}

pub fn dispatch(cfg: &JobConfig) -> Result<Outcome, CliError> {
    if cfg.cmd() == "validate" {
        return validate(cfg);
    }
    let alg = algebra(cfg)?;
    let p = &cfg.params;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    match cfg.cmd() {
        "weyl" => weyl(&alg, p),
        "mult" => mult(&alg, p),
        "normalform" => normalform(&alg, p),
        "center" => center(&alg, p),
        "cfun" => cfun(&alg, cfg.q(), p),
        "residual" => residual(&alg),
        "induce" => induce(&alg, cfg.q(), p),
        "weights" => weights(&alg, cfg.q(), p),
        "tempered" => tempered(&alg, cfg.q(), p),
        "cterm" => cterm(&alg, cfg.q(), p, &mut rng),
        "plancherel" => plancherel(&alg, cfg.q(), p),
        "probe-growth" => probe_growth(&alg, cfg.q(), p, &mut rng),
        "probe-decay" => probe_decay(&alg, cfg.q(), p, &mut rng),
        "factor-check" => factor_check(&alg, cfg.q(), p, &mut rng),
        other => Err(CliError::validation(format!("unknown cmd '{other}'"))),
    }
}

fn validate(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let mut r = Report::new("validate", &["kind", "message"]);
    let raw = match (&cfg.preset, &cfg.datum) {
        (Some(p), _) => RootDatum::preset(p)?.raw(),
        (_, Some(raw)) => raw.clone(),
        _ => return Err(CliError::validation("preset or datum required")),
    };
    for v in rootdata::validate(&raw) {
        r.row(vec![v.kind.as_str().into(), v.message.into()]);
    }
    if r.rows.is_empty() {
        if let Err(e) = HeckeAlgebra::new(RootDatum::new(raw)?, &cfg.labels()) {
            r.row(vec!["labels".into(), e.to_string().into()]);
        }
    }
    r.meta("valid", r.rows.is_empty());
    let code = if r.rows.is_empty() { EXIT_OK } else { EXIT_VALIDATION };
    Ok(Outcome { report: r, code })
}

fn weyl(alg: &HeckeAlgebra, p: &Params) -> Result<Outcome, CliError> {
    let w = alg.weyl();
    let mut r = Report::new("weyl", &["word", "length", "norm", "x", "u"]);
    for (e, n) in w.ball(p.max_norm.unwrap_or(3)) {
        r.row(vec![
            w.format(&e).into(),
            w.length(&e).into(),
            n.to_string().into(),
            format!("{:?}", e.x).into(),
            w.format(&w.finite_elt(e.u)).into(),
        ]);
    }
    r.meta("finite_order", w.finite().order());
    ok(r)
}

fn coefficient(t: &config::Term) -> Result<Laurent, CliError> {
    match &t.c {
        Some(s) => Laurent::parse(s).map_err(|e| CliError::validation(format!("coefficient '{s}': {e}"))),
        None => Ok(Laurent::one()),
    }
}

fn element(alg: &HeckeAlgebra, terms: &Option<Vec<config::Term>>, name: &str) -> Result<NForm, CliError> {
    let terms = terms.as_ref().ok_or_else(|| CliError::validation(format!("params.{name} required")))?;
    let mut h = NForm::zero();
    for t in terms {
        let c = coefficient(t)?;
        let part = match (&t.w, &t.theta) {
            (Some(w), None) => {
                NForm::basis(alg.weyl().parse(w).map_err(|e| CliError::validation(format!("word '{w}': {e}")))?)
            }
            (None, Some(x)) if x.len() == alg.rank() => alg.theta(x),
            (None, Some(_)) => return Err(CliError::validation(format!("theta in params.{name} has wrong length"))),
            _ => return Err(CliError::validation(format!("each term of params.{name} needs exactly one of w, theta"))),
        };
        h = h.add(&part.scale(&c));
    }
    Ok(h)
}

/// An element from its JSON5 term list, `[{w:"s1", c:"v"}, {theta:[1]}]`.
pub fn parse_element(alg: &HeckeAlgebra, text: &str) -> Result<NForm, CliError> {
    let terms: Vec<config::Term> = json5::from_str(text).map_err(|e| CliError::validation(format!("element: {e}")))?;
    element(alg, &Some(terms), "element")
}

fn nform_report(alg: &HeckeAlgebra, title: &str, h: &NForm) -> Report {
    let mut r = Report::new(title, &["w", "coeff"]);
    for (w, c) in alg.format_nform(h) {
        r.row(vec![w.into(), c.into()]);
    }
    r
}

fn mult(alg: &HeckeAlgebra, p: &Params) -> Result<Outcome, CliError> {
    let a = element(alg, &p.left, "left")?;
    let b = element(alg, &p.right, "right")?;
    let prod = alg.nmul(&a, &b);
    let mut r = nform_report(alg, "mult", &prod);
    r.meta("trace", alg.trace(&prod).to_string());
    ok(r)
}

fn normalform(alg: &HeckeAlgebra, p: &Params) -> Result<Outcome, CliError> {
    let h = element(alg, &p.h, "h")?;
    let b = alg.nform_to_bform(&h);
    let mut r = Report::new("normalform", &["u", "theta", "coeff"]);
    for (u, x, c) in alg.format_bform(&b) {
        r.row(vec![u.into(), x.into(), c.into()]);
    }
    r.meta("roundtrip", alg.bform_to_nform(&b) == h);
    ok(r)
}

fn center(alg: &HeckeAlgebra, p: &Params) -> Result<Outcome, CliError> {
    let max = num_rational::Rational64::from(p.max_norm.unwrap_or(4) as i64);
    let d = alg.datum();
    let w = alg.weyl();
    let mut r = Report::new("center", &["x", "norm", "terms", "central"]);
    let mut xs: Vec<IVec> = repmod::dominant_points(d, 2 * max.to_integer() + 2)
        .into_iter()
        .filter(|x| w.translation_norm(x) <= max)
        .collect();
    xs.insert(0, vec![0; d.rank()]);
    for x in xs {
        let z = alg.orbit_sum(&x);
        let central = alg.is_central(&z).is_ok();
        r.row(vec![format!("{x:?}").into(), w.translation_norm(&x).to_string().into(), z.part(0).0.len().into(), central.into()]);
    }
    ok(r)
}

/// Angles used when a command needs a twist and none is given; far from
/// every reflection hyperplane of the small presets.
const DEFAULT_ANGLES: [f64; 4] = [0.7137, 1.9231, 2.5171, 0.3301];

fn torus_point(p: &Params, rank: usize) -> Result<TorusPoint, CliError> {
    let t = match (&p.t, &p.angles) {
        (Some(t), _) => TorusPoint(t.iter().map(|z| Complex64::new(z[0], z[1])).collect()),
        (None, Some(a)) => TorusPoint::from_angles(a),
        (None, None) if rank <= DEFAULT_ANGLES.len() => TorusPoint::from_angles(&DEFAULT_ANGLES[..rank]),
        (None, None) => TorusPoint::trivial(rank),
    };
    if t.rank() != rank {
        return Err(CliError::validation(format!("torus point has {} coordinates, expected {rank}", t.rank())));
    }
    Ok(t)
}

fn cfun(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<Outcome, CliError> {
    let cf = CFunction::new(alg);
    let roots = alg.datum().positive_roots();
    if let Some(n) = p.grid {
        let g = QuadratureGrid::new(alg.rank(), n);
        let mut cols: Vec<String> = (0..alg.rank()).map(|i| format!("phi{}", i + 1)).collect();
        cols.push("density".into());
        let mut r = Report { title: "cfun density".into(), columns: cols, ..Default::default() };
        let w0 = alg.weyl().finite().order();
        for k in 0..g.len() {
            let t = g.point(k);
            let dens = harmonic::plancherel_density(alg, &cf, &t, q, &Parabolic::empty(), w0, 1.0)?;
            let mut row: Vec<Cell> = g.angles(k).into_iter().map(Cell::Float).collect();
            row.push(dens.into());
            r.row(row);
        }
        return ok(r);
    }
    if let Some(s) = &p.point {
        let pt = ExactPoint::parse(s).map_err(CliError::validation)?;
        if pt.rank() != alg.rank() {
            return Err(CliError::validation("point has the wrong rank"));
        }
        let mut r = Report::new("cfun exact", &["point", "c", "c_w0", "pole_order"]);
        let w0t = pt.act(alg.weyl().finite(), alg.weyl().finite().longest());
        let show = |v: Result<crate::cfun::QValue, CError>| match v {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        };
        r.row(vec![
            pt.to_string().into(),
            show(cf.eval_exact(&pt, &roots)).into(),
            show(cf.eval_exact(&w0t, &roots)).into(),
            cf.pole_order(&pt).into(),
        ]);
        return ok(r);
    }
    let t = torus_point(p, alg.rank())?;
    let c = cf.eval(&t, q, &roots)?;
    let mut r = Report::new("cfun", &["re", "im", "abs_inv_sq"]);
    r.row(vec![c.re.into(), c.im.into(), cf.abs_inv_sq(&t, q, &roots)?.into()]);
    ok(r)
}

fn residual(alg: &HeckeAlgebra) -> Result<Outcome, CliError> {
    let cf = CFunction::new(alg);
    let pts = cf.residual_search()?;
    let mut r = Report::new("residual", &["point", "pole_order", "orbit_size", "cster"]);
    for pt in &pts {
        r.row(vec![
            pt.to_string().into(),
            cf.pole_order(pt).into(),
            pt.orbit(alg.weyl().finite()).len().into(),
            cf.cster_check(pt).into(),
        ]);
    }
    r.meta("orbits", pts.len());
    ok(r)
}

/// The representation described by `params`: Steinberg of `ℋ`, or induced
/// from `P` with `δ` the Steinberg of `ℋ_P` (trivial when `P = ∅`).
fn representation(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<(FinRep, Option<Induced>), CliError> {
    if p.rep.as_deref() == Some("steinberg") {
        let chars = repmod::omega_characters(alg);
        let chi = chars.get(p.chi.unwrap_or(0)).ok_or_else(|| CliError::validation("params.chi out of range"))?;
        return Ok((repmod::steinberg(alg, q, chi)?, None));
    }
    if let Some(kind) = p.rep.as_deref().filter(|k| *k != "induced") {
        return Err(CliError::validation(format!("params.rep must be 'steinberg' or 'induced', got '{kind}'")));
    }
    let pset = Parabolic::new(p.p.clone().unwrap_or_default());
    if pset.iter().any(|i| i >= alg.datum().num_simple()) {
        return Err(CliError::validation("params.p index out of range"));
    }
    let lower = alg.lower_algebra(&pset)?;
    let delta = if pset.is_empty() {
        repmod::trivial_rep(&lower.alg, q)?
    } else {
        let chars = repmod::omega_characters(&lower.alg);
        let chi = chars.get(p.chi.unwrap_or(0)).ok_or_else(|| CliError::validation("params.chi out of range"))?;
        repmod::steinberg(&lower.alg, q, chi)?
    };
    let upper_rank = lower.qd.to_xupper.len();
    let tp = torus_point(p, upper_rank)?;
    let t = repmod::lift_twist(&lower, &tp);
    let ind = repmod::induce(alg, &lower, &delta, &t)?;
    Ok((ind.rep.clone(), Some(ind)))
}

fn weight_datum(alg: &HeckeAlgebra, rep: &FinRep, ind: &Option<Induced>) -> Result<repmod::WeightDatum, CliError> {
    Ok(match ind {
        Some(i) => repmod::weights(rep, Some(&i.predicted_weights(alg)))?,
        None => repmod::weights(rep, None)?,
    })
}

fn induce(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<Outcome, CliError> {
    let (rep, ind) = representation(alg, q, p)?;
    let mut r = Report::new("induce", &["generator", "row", "col", "re", "im"]);
    r.meta("dim", rep.dim);
    r.meta("unitarity_defect", rep.unitarity_defect(alg));
    if let Some(i) = &ind {
        r.meta("basis", i.basis_labels(alg).join(" "));
    }
    let mut push = |name: String, m: &crate::linalg::CMat| {
        for a in 0..m.nrows() {
            for b in 0..m.ncols() {
                r.row(vec![name.clone().into(), a.into(), b.into(), m[(a, b)].re.into(), m[(a, b)].im.into()]);
            }
        }
    };
    for (i, m) in rep.ns.iter().enumerate() {
        push(format!("N_s{}", i + 1), m);
    }
    for (j, m) in rep.theta.iter().enumerate() {
        push(format!("theta_e{}", j + 1), m);
    }
    ok(r)
}

fn weight_columns(n: usize) -> Vec<String> {
    let mut cols = vec!["index".to_string(), "mult".to_string()];
    for i in 1..=n {
        cols.push(format!("abs{i}"));
        cols.push(format!("arg{i}"));
    }
    cols
}

fn weights(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<Outcome, CliError> {
    let (rep, ind) = representation(alg, q, p)?;
    let wd = weight_datum(alg, &rep, &ind)?;
    let mut r = Report { title: "weights".into(), columns: weight_columns(alg.rank()), ..Default::default() };
    r.meta("projector_residual", wd.residual);
    r.meta("max_deviation", wd.deviation);
    for (k, w) in wd.weights.iter().enumerate() {
        let mut row: Vec<Cell> = vec![k.into(), w.mult.into()];
        for z in &w.t.0 {
            row.push(z.norm().into());
            row.push(z.arg().into());
        }
        r.row(row);
    }
    ok(r)
}

fn tempered(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<Outcome, CliError> {
    let (rep, ind) = representation(alg, q, p)?;
    let wd = weight_datum(alg, &rep, &ind)?;
    let v = repmod::casselman_check(alg.datum(), &wd);
    let mut r = Report::new("tempered", &["weight", "witness", "abs_x_t"]);
    r.meta("tempered", v.tempered);
    r.meta("discrete_series", v.discrete_series);
    for (k, x, a) in &v.witnesses {
        r.row(vec![(*k).into(), format!("{x:?}").into(), (*a).into()]);
    }
    ok(r)
}

fn qset(alg: &HeckeAlgebra, p: &Params, default: Vec<usize>) -> Result<Parabolic, CliError> {
    let q = Parabolic::new(p.qset.clone().unwrap_or(default));
    if q.iter().any(|i| i >= alg.datum().num_simple()) {
        return Err(CliError::validation("params.qset index out of range"));
    }
    Ok(q)
}

fn cterm(alg: &HeckeAlgebra, q: f64, p: &Params, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let (rep, ind) = representation(alg, q, p)?;
    let ind = ind.ok_or_else(|| CliError::validation("cterm needs an induced representation"))?;
    let wd = weight_datum(alg, &rep, &Some(ind.clone()))?;
    let qs = qset(alg, p, vec![0])?;
    let a = repmod::random_vector(rep.dim, rng);
    let b = repmod::random_vector(rep.dim, rng);
    let aq = repmod::constant_term_vector(alg.datum(), &wd, &a, &qs)?;
    let ac = repmod::class_sum_vector(alg, &ind, &wd, &a, &qs);
    let mut r = Report::new("cterm", &["w", "norm", "f_re", "f_im", "fq_re", "fq_im", "class_re", "class_im"]);
    let mut worst: f64 = 0.0;
    for (w, n) in alg.weyl().ball(p.max_norm.unwrap_or(4)) {
        let m = rep.basis(alg, &w);
        let f = repmod::coefficient(&a, &m, &b);
        let fq = repmod::coefficient(&aq, &m, &b);
        let fc = repmod::coefficient(&ac, &m, &b);
        worst = worst.max((fq - fc).norm());
        r.row(vec![
            alg.weyl().format(&w).into(),
            n.to_string().into(),
            f.re.into(),
            f.im.into(),
            fq.re.into(),
            fq.im.into(),
            fc.re.into(),
            fc.im.into(),
        ]);
    }
    r.meta("max_discrepancy", worst);
    ok(r)
}

fn plancherel(alg: &HeckeAlgebra, q: f64, p: &Params) -> Result<Outcome, CliError> {
    if alg.rank() != 1 {
        return Err(CliError::unsupported("plancherel inversion is implemented for rank one"));
    }
    let rep = harmonic::plancherel_invert_rank1(alg, q, p.grid.unwrap_or(4096), p.max_norm.unwrap_or(10))?;
    let mut r = Report::new("plancherel", &["w", "norm", "tau", "rec_re", "rec_im", "residual"]);
    r.meta("grid", rep.grid);
    r.meta("mass", rep.mass);
    r.meta("max_residual", rep.max_residual);
    for row in &rep.rows {
        r.row(vec![
            row.label.clone().into(),
            row.norm.into(),
            row.tau.into(),
            row.reconstruction.re.into(),
            row.reconstruction.im.into(),
            row.residual.into(),
        ]);
    }
    ok(r)
}

fn probe_growth(alg: &HeckeAlgebra, q: f64, p: &Params, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let (rep, _) = representation(alg, q, p)?;
    let a = repmod::random_vector(rep.dim, rng);
    let b = repmod::random_vector(rep.dim, rng);
    let g = harmonic::growth_probe(alg, &rep, &a, &b, p.max_norm.unwrap_or(14));
    let mut r = Report::new("probe-growth", &["n", "max_abs"]);
    r.meta("verdict", g.verdict.to_string());
    for (n, v) in g.table {
        r.row(vec![n.into(), v.into()]);
    }
    ok(r)
}

fn probe_decay(alg: &HeckeAlgebra, q: f64, p: &Params, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let (rep, ind) = representation(alg, q, p)?;
    let wd = weight_datum(alg, &rep, &ind)?;
    let alpha = p.alpha.unwrap_or(0);
    if alpha >= alg.datum().num_simple() {
        return Err(CliError::validation("params.alpha out of range"));
    }
    let rays = match &p.x0 {
        Some(v) => v.clone(),
        None => harmonic::decay_rays(alg, alpha, 3),
    };
    let a: CVec = repmod::random_vector(rep.dim, rng);
    let b: CVec = repmod::random_vector(rep.dim, rng);
    let mut r = Report::new("probe-decay", &["ray", "k", "value"]);
    for x0 in rays {
        if x0.len() != alg.rank() {
            return Err(CliError::validation("params.x0 entries have the wrong length"));
        }
        let label = format!("{x0:?}");
        match harmonic::cterm_decay_probe(alg, &rep, &wd, alpha, &a, &b, &x0, p.a.unwrap_or(0.1), p.kmax.unwrap_or(12))? {
            Decay::NotApplicable(why) => r.meta(&format!("b_hat{label}"), format!("not applicable: {why}")),
            Decay::Rate { b_hat, table } => {
                r.meta(&format!("b_hat{label}"), b_hat);
                for (k, v) in table {
                    r.row(vec![label.clone().into(), k.into(), v.into()]);
                }
            }
        }
    }
    ok(r)
}

fn factor_check(alg: &HeckeAlgebra, q: f64, p: &Params, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let qs = qset(alg, p, vec![0])?;
    let t = if p.t.is_some() || p.angles.is_some() {
        torus_point(p, alg.rank())?
    } else {
        harmonic::generic_unitary(alg, q, rng)
    };
    let rep = harmonic::factorization_check(alg, &qs, &t, q, p.trials.unwrap_or(10), rng)?;
    let mut r = Report::new("factor-check", &["trial", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "control_re", "control_im"]);
    r.meta("max_discrepancy", rep.max_discrepancy);
    r.meta("max_control", rep.max_control);
    for (k, s) in rep.samples.iter().enumerate() {
        r.row(vec![
            k.into(),
            s.lhs.re.into(),
            s.lhs.im.into(),
            s.rhs.re.into(),
            s.rhs.im.into(),
            s.control.re.into(),
            s.control.im.into(),
        ]);
    }
    ok(r)
}

/// Full job: parse, run, render. Returns the rendered output (if any) and
/// the exit code.
pub fn run(text: &str, cmd: Option<&str>, format: Option<Format>, seed: Option<u64>) -> (Option<String>, i32, Option<CliError>) {
    let mut cfg = match parse_config(text, cmd) {
        Ok(c) => c,
        Err(e) => return (None, e.code, Some(e)),
    };
    if seed.is_some() {
        cfg.seed = seed;
    }
    let fmt = format.or(cfg.format).unwrap_or(Format::Csv);
    match dispatch(&cfg) {
        Ok(o) => (Some(emit(&o.report, fmt)), o.code, None),
        Err(e) => (None, e.code, Some(e)),
    }
}
