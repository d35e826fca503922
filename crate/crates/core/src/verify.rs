//! Verification suites: every acceptance criterion as an executable check
//! with a printable report.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::bracket::{
    bracket_jacobi, bracket_jacobi_poly, bracket_rank_over_x, check_recursion_table, check_recursions,
    coefficient_table, default_samples,
};
use crate::error::Error;
use crate::forms::{eisenstein_q, jacobi_theta, siegel_theta, Lattice};
use crate::genfun::{crosscheck_bracket, Proportionality};
use crate::io::{export_jacobi, export_siegel, import_jacobi, import_siegel};
use crate::rational::{int, ratio, Rational};
use crate::series::{add, heat_pow, mul, scale, theta_q, JacobiSeries, SupportKind};
use crate::siegel::{
    bracket_siegel_direct, bracket_siegel_via_jacobi, check_siegel_consistency, check_siegel_cusp, SiegelSeries,
};

/// Truncation of the Jacobi test forms.
pub const JACOBI_TRUNC: u32 = 8;
/// Truncation of the Siegel theta series.
pub const SIEGEL_TRUNC: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Bracket,
    Genfun,
    Siegel,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "core" => Ok(Suite::Core),
            "bracket" => Ok(Suite::Bracket),
            "genfun" => Ok(Suite::Genfun),
            "siegel" => Ok(Suite::Siegel),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Core => &[4, 8, 9],
            Suite::Bracket => &[1, 2, 5, 6],
            Suite::Genfun => &[3],
            Suite::Siegel => &[7],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Measurements and, on failure, witnesses.
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, title: &'static str) -> Self {
        Self {
            id,
            title,
            passed: true,
            notes: Vec::new(),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.passed = false;
        self.notes.push(format!("FAIL {}", s.into()));
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] criterion {}: {}", self.id, self.title)?;
        for n in &self.notes {
            writeln!(f, "    {n}")?;
        }
        Ok(())
    }
}

/// The test forms, built on first use.
#[derive(Default)]
pub struct Context {
    jacobi: OnceLock<Vec<(&'static str, JacobiSeries)>>,
    siegel: OnceLock<SiegelSeries>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// `θ_{E8,v2}`, `E4·θ`, `E6·θ` at truncation [`JACOBI_TRUNC`].
    pub fn jacobi_forms(&self) -> &[(&'static str, JacobiSeries)] {
        self.jacobi.get_or_init(|| {
            let theta = e8_theta(JACOBI_TRUNC);
            let e4 = eisenstein_q(4, JACOBI_TRUNC).unwrap().to_jacobi();
            let e6 = eisenstein_q(6, JACOBI_TRUNC).unwrap().to_jacobi();
            vec![
                ("theta", theta.clone()),
                ("E4*theta", mul(&e4, &theta)),
                ("E6*theta", mul(&e6, &theta)),
            ]
        })
    }

    pub fn form(&self, name: &str) -> &JacobiSeries {
        &self.jacobi_forms().iter().find(|(n, _)| *n == name).expect("known form").1
    }

    /// `siegel_theta(E8, SIEGEL_TRUNC)`.
    pub fn siegel_theta(&self) -> &SiegelSeries {
        self.siegel.get_or_init(|| siegel_theta(Lattice::E8, SIEGEL_TRUNC))
    }
}

/// The index-1 E8 Jacobi theta series for `v = (1, -1, 0, ..., 0)`.
pub fn e8_theta(trunc: u32) -> JacobiSeries {
    let v = Lattice::E8.default_vector(1).expect("root exists");
    jacobi_theta(Lattice::E8, &v, trunc).expect("root lies in E8")
}

pub fn run_suite(suite: Suite, ctx: &Context) -> Vec<CriterionReport> {
    suite.criteria().iter().map(|&id| run_criterion(id, ctx)).collect()
}

pub fn run_criterion(id: u8, ctx: &Context) -> CriterionReport {
    match id {
        1 => criterion_degenerations(ctx),
        2 => criterion_jacobi_conclusions(ctx),
        3 => criterion_generating_function(ctx),
        4 => criterion_heat_leibniz(ctx),
        5 => criterion_recursions(),
        6 => criterion_rank(ctx),
        7 => criterion_siegel(ctx),
        8 => criterion_lattice(ctx),
        9 => criterion_io(ctx),
        _ => panic!("no criterion {id}"),
    }
}

fn x_label(x: &Rational) -> String {
    x.to_string()
}

pub fn criterion_degenerations(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(1, "bracket degenerations v=0, v=1");
    let forms = ctx.jacobi_forms();
    let zero = Rational::zero();
    let one = int(1);
    for (a, f) in forms {
        rep.require(bracket_jacobi(f, f, &one, 1).is_zero(), || format!("[{a},{a}]_(1,1) != 0"));
        for (b, g) in forms {
            let v0 = bracket_jacobi(f, g, &ratio(-1, 2), 0);
            rep.require(v0 == mul(f, g), || format!("[{a},{b}]_(X,0) != product"));
            let at0 = export_jacobi(&bracket_jacobi(f, g, &zero, 1));
            let at1 = export_jacobi(&bracket_jacobi(f, g, &one, 1));
            rep.require(at0 == at1, || format!("[{a},{b}]_(X,1) depends on X"));
        }
    }
    rep.note(format!("{} forms, {} ordered pairs", forms.len(), forms.len() * forms.len()));
    rep
}

pub fn criterion_jacobi_conclusions(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(2, "bracket support, cusp, disc-class, parity (v<=5)");
    let forms = ctx.jacobi_forms();
    let xs = [int(0), int(1), ratio(-1, 2)];
    let mut count = 0;
    for (a, f) in forms {
        for (b, g) in forms {
            for v in 0..=5u32 {
                for x in &xs {
                    count += 1;
                    let out = bracket_jacobi(f, g, x, v);
                    let tag = || format!("[{a},{b}]_({},{v})", x_label(x));
                    rep.require(
                        out.weight() == f.weight() + g.weight() + i64::from(v) && out.index() == f.index() + g.index(),
                        || format!("{}: weight/index bookkeeping", tag()),
                    );
                    if let Some(k) = out.support_violation(SupportKind::Holomorphic) {
                        rep.fail(format!("{}: holomorphic support at {k:?}", tag()));
                    }
                    if v > 1 {
                        if let Some(k) = out.support_violation(SupportKind::Cusp) {
                            rep.fail(format!("{}: cusp support at {k:?} = {}", tag(), out.coeff(k.0, k.1)));
                        }
                    }
                    match out.check_disc_class_invariance() {
                        Ok(None) => {}
                        Ok(Some(w)) => rep.fail(format!("{}: disc-class {w}", tag())),
                        Err(e) => rep.fail(format!("{}: {e}", tag())),
                    }
                    if let Some(k) = out.parity_violation() {
                        rep.fail(format!("{}: parity at {k:?}", tag()));
                    }
                }
            }
        }
    }
    rep.note(format!("{count} brackets checked"));
    rep
}

pub fn criterion_generating_function(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(3, "generating-function oracle proportional (v<=5)");
    let theta = ctx.form("theta");
    let e4t = ctx.form("E4*theta");
    let pairs = [("theta", "theta"), ("theta", "E4*theta"), ("E4*theta", "E6*theta"), ("E6*theta", "theta")];
    for (a, b) in pairs {
        let (f, g) = (ctx.form(a), ctx.form(b));
        for v in 0..=5u32 {
            for x in [int(0), int(1)] {
                match crosscheck_bracket(f, g, &x, v) {
                    Ok(p) => rep.note(format!("({a},{b}) v={v} X={x}: {p}")),
                    Err(e) => rep.fail(format!("({a},{b}) v={v} X={x}: {e}")),
                }
            }
        }
    }
    // Same (k, k', m, m') from different inputs must give the same λ.
    let e4 = eisenstein_q(4, JACOBI_TRUNC).unwrap().to_jacobi();
    let e6 = eisenstein_q(6, JACOBI_TRUNC).unwrap().to_jacobi();
    let first = mul(&mul(&e4, &e4), e4t);
    let second = mul(&mul(&e6, &e6), theta);
    for v in 0..=5u32 {
        for x in [int(0), int(1)] {
            let l1 = crosscheck_bracket(&first, theta, &x, v);
            let l2 = crosscheck_bracket(&second, theta, &x, v);
            match (l1, l2) {
                (Ok(Proportionality::Scalar(p)), Ok(Proportionality::Scalar(q))) => {
                    rep.require(p == q, || format!("(E4^3 theta vs E6^2 theta, theta) v={v} X={x}: {p} != {q}"))
                }
                (Ok(p), Ok(q)) => rep.require(p == q, || format!("v={v} X={x}: {p} vs {q}")),
                (Err(e), _) | (_, Err(e)) => rep.fail(format!("weight-16 pair v={v} X={x}: {e}")),
            }
        }
    }
    rep.note("λ agrees for (E4^3·θ, θ) and (E6^2·θ, θ), v<=5, X in {0,1}");
    rep
}

/// `heat^r(f g) = Σ_j (4m)^{r-j} C(r, j) theta_q^{r-j}(f) heat^j(g)` for a
/// `q`-only `f`.
pub fn heat_leibniz_holds(f: &JacobiSeries, g: &JacobiSeries, r: u32) -> bool {
    let four_m = int(4 * i64::from(g.index()));
    let lhs = heat_pow(&mul(f, g), r);
    let mut rhs = JacobiSeries::zero(lhs.weight(), lhs.index(), lhs.trunc());
    let mut binom = int(1);
    for j in 0..=r {
        if j > 0 {
            binom = binom * int(i64::from(r - j + 1)) / int(i64::from(j));
        }
        let mut df = f.clone();
        for _ in 0..(r - j) {
            df = theta_q(&df);
        }
        let coef = num_traits::pow(four_m.clone(), (r - j) as usize) * &binom;
        let term = scale(&coef, &mul(&df, &heat_pow(g, j))).with_weight(rhs.weight());
        rhs = add(&rhs, &term).expect("same index");
    }
    lhs == rhs
}

pub fn criterion_heat_leibniz(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "heat Leibniz expansion r<=3");
    let theta = ctx.form("theta");
    for k in [4, 6] {
        let e = eisenstein_q(k, JACOBI_TRUNC).unwrap().to_jacobi();
        for r in 0..=3 {
            rep.require(heat_leibniz_holds(&e, theta, r), || format!("E{k}, r={r}"));
        }
    }
    rep
}

pub fn criterion_recursions() -> CriterionReport {
    let mut rep = CriterionReport::new(5, "coefficient recursions l<=6, perturbations detected");
    let mut weights: Vec<(Rational, Rational)> = Vec::new();
    for k in [4, 6, 10, 35] {
        for kp in [4, 6, 10, 35] {
            weights.push((int(k), int(kp)));
        }
    }
    weights.push((ratio(9, 2), int(6)));
    weights.push((ratio(7, 3), ratio(11, 2)));
    let mut perturbations = 0;
    for (k, kp) in &weights {
        for l in 1..=6 {
            rep.require(check_recursions(k, kp, l), || format!("k={k} k'={kp} l={l}"));
            let base = coefficient_table(k, kp, l);
            for key in base.keys() {
                let mut t = base.clone();
                *t.get_mut(key).unwrap() += ratio(1, 7);
                perturbations += 1;
                rep.require(check_recursion_table(k, kp, l, &t).is_err(), || {
                    format!("perturbed C{key:?} undetected (k={k} k'={kp} l={l})")
                });
            }
        }
    }
    rep.note(format!("{} weight pairs, {perturbations} perturbations", weights.len()));
    rep
}

pub fn criterion_rank(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "rank over X <= floor(v/2)+1, equality measured");
    let f = ctx.form("E4*theta");
    let g = ctx.form("E6*theta");
    for v in 0..=5u32 {
        let bound = v as usize / 2 + 1;
        match bracket_rank_over_x(f, g, v, &default_samples(v)) {
            Ok(rank) => {
                rep.require(rank <= bound, || format!("v={v}: rank {rank} exceeds {bound}"));
                let eq = if rank == bound { "equal" } else { "below bound (reported as small-weight exception)" };
                rep.note(format!("v={v}: rank {rank}, bound {bound}: {eq}"));
            }
            Err(e) => rep.fail(format!("v={v}: {e}")),
        }
        // The polynomial form must reproduce every sample.
        let poly = bracket_jacobi_poly(f, g, v);
        rep.require(poly.len() == bound, || format!("v={v}: {} X-coefficients", poly.len()));
        for x in default_samples(v) {
            let mut eval = JacobiSeries::zero(poly[0].weight(), poly[0].index(), poly[0].trunc());
            let mut power = int(1);
            for p in &poly {
                eval = add(&eval, &scale(&power, p)).expect("same shape");
                power *= &x;
            }
            rep.require(eval == bracket_jacobi(f, g, &x, v), || format!("v={v}: X-polynomial differs at X={x}"));
        }
    }
    // Distinct z-structure: the root theta against a norm-4 vector theta.
    let e4 = eisenstein_q(4, JACOBI_TRUNC).unwrap().to_jacobi();
    let e6 = eisenstein_q(6, JACOBI_TRUNC).unwrap().to_jacobi();
    let v2 = Lattice::E8.default_vector(2).expect("norm-4 vector exists");
    let theta2 = jacobi_theta(Lattice::E8, &v2, JACOBI_TRUNC).expect("vector lies in E8");
    let (mf, mg) = (mul(&e4, ctx.form("theta")), mul(&e6, &theta2));
    let mut ranks = Vec::new();
    for v in 0..=5u32 {
        match bracket_rank_over_x(&mf, &mg, v, &default_samples(v)) {
            Ok(rank) => {
                rep.require(rank <= v as usize / 2 + 1, || format!("mixed pair v={v}: rank {rank} exceeds bound"));
                ranks.push(rank);
            }
            Err(e) => rep.fail(format!("mixed pair v={v}: {e}")),
        }
    }
    rep.note(format!("(E4*theta, E6*theta_{{index 2}}) ranks v=0..5: {ranks:?}"));
    match bracket_rank_over_x(f, g, 2, &[int(0), int(1), int(0)]) {
        Err(Error::DuplicateSample(_)) => {}
        other => rep.fail(format!("duplicate samples not rejected: {other:?}")),
    }
    rep
}

pub fn criterion_siegel(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "Siegel bracket: direct = via Jacobi, l<=2");
    let theta = ctx.siegel_theta();
    for l in 0..=2u32 {
        let direct = bracket_siegel_direct(theta, theta, l);
        let via = bracket_siegel_via_jacobi(theta, theta, l);
        if direct != via {
            let key = direct
                .iter()
                .map(|(k, _)| *k)
                .chain(via.iter().map(|(k, _)| *k))
                .find(|&(n, r, m)| direct.coeff(n, r, m) != via.coeff(n, r, m))
                .expect("series differ somewhere");
            let (n, r, m) = key;
            rep.fail(format!(
                "l={l}: paths differ at a{key:?}: direct {} vs via Jacobi {}",
                direct.coeff(n, r, m),
                via.coeff(n, r, m)
            ));
        }
        rep.require(direct.weight() == 8 + 2 * i64::from(l), || format!("l={l}: weight {}", direct.weight()));
        if let Some(k) = direct.symmetry_violation() {
            rep.fail(format!("l={l}: asymmetric at {k:?}"));
        }
        if l > 0 {
            let cusp = check_siegel_cusp(&direct);
            for c in cusp.failures() {
                rep.fail(format!("l={l}: {} {}", c.name, c.witness.clone().unwrap_or_default()));
            }
            rep.require(direct.iter().all(|(&(n, _, m), _)| n > 0 && m > 0), || {
                format!("l={l}: nonzero n=0 or m=0 coefficient")
            });
        }
        let consistency = check_siegel_consistency(&direct);
        for c in consistency.failures() {
            rep.fail(format!("l={l}: {} {}", c.name, c.witness.clone().unwrap_or_default()));
        }
        rep.note(format!("l={l}: {} nonzero coefficients, a(1,0,1) = {}", direct.nonzero_len(), direct.coeff(1, 0, 1)));
    }
    rep
}

pub fn criterion_lattice(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(8, "lattice gates and theta consistency");
    let mut shells = [0usize; 3];
    for v in Lattice::E8.enumerate_vectors(2) {
        shells[v.half_norm() as usize] += 1;
    }
    rep.require(shells == [1, 240, 2160], || format!("E8 shells {shells:?}"));
    rep.note(format!("E8 shells x·x = 0, 2, 4: {shells:?}"));

    let theta = ctx.form("theta");
    rep.require(theta.has_holomorphic_support(), || "jacobi theta support".into());
    rep.require(theta.check_parity(), || "jacobi theta parity".into());
    match theta.check_disc_class_invariance() {
        Ok(None) => {}
        other => rep.fail(format!("jacobi theta disc-class: {other:?}")),
    }
    let report = check_siegel_consistency(ctx.siegel_theta());
    for c in report.failures() {
        rep.fail(format!("siegel theta {} {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    rep.note(format!("siegel theta T={SIEGEL_TRUNC}: {} checks", report.checks.len()));
    rep
}

pub fn criterion_io(ctx: &Context) -> CriterionReport {
    let mut rep = CriterionReport::new(9, "file round trip and thread-count determinism");
    let forms = ctx.jacobi_forms();
    let mut jacobi: Vec<(String, JacobiSeries)> = forms.iter().map(|(n, f)| (n.to_string(), f.clone())).collect();
    let (f, g) = (&forms[1].1, &forms[2].1);
    jacobi.push(("bracket v=3 X=-1/2".into(), bracket_jacobi(f, g, &ratio(-1, 2), 3)));
    jacobi.push(("zero".into(), JacobiSeries::zero(4, 1, 3)));
    for (name, s) in &jacobi {
        let text = export_jacobi(s);
        match import_jacobi(&text) {
            Ok(back) => {
                rep.require(&back == s, || format!("{name}: value changed"));
                rep.require(export_jacobi(&back) == text, || format!("{name}: bytes changed"));
            }
            Err(e) => rep.fail(format!("{name}: {e}")),
        }
    }
    let siegel = [ctx.siegel_theta().clone(), bracket_siegel_direct(ctx.siegel_theta(), ctx.siegel_theta(), 1)];
    for (i, s) in siegel.iter().enumerate() {
        let text = export_siegel(s);
        match import_siegel(&text) {
            Ok(back) => rep.require(export_siegel(&back) == text && &back == s, || format!("siegel #{i}: round trip")),
            Err(e) => rep.fail(format!("siegel #{i}: {e}")),
        }
    }

    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            let theta = siegel_theta(Lattice::E8, 2);
            let sb = bracket_siegel_via_jacobi(&theta, &theta, 1);
            let jb = bracket_jacobi(f, g, &ratio(-1, 2), 5);
            (export_siegel(&theta), export_siegel(&sb), export_jacobi(&jb))
        })
    };
    let single = run(1);
    for threads in [2, 4] {
        rep.require(run(threads) == single, || format!("output differs with {threads} threads"));
    }
    rep.note(format!("{} jacobi + {} siegel round trips, threads 1/2/4", jacobi.len(), siegel.len()));
    rep
}
