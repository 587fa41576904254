//! Checking the weakly exact axioms on an instance.
//!
//! Exhaustive mode walks every configuration of enumerated objects and
//! morphisms, level by level in the object size, and stops at the first
//! level with a failure so that the reported counterexample is as small as
//! possible. Universal properties are checked by brute force against all
//! enumerated test objects, not through the instance's own lifts. When the
//! work budget runs out the verdict is inconclusive.
//!
//! Sampled mode draws configurations from an [`AxiomSampler`].

use std::fmt;

use crate::category::{Category, CategoryExt};
use crate::engine::grid::grid_from_deflations;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Isomorphisms and maps to zero are deflations.
    Zero,
    /// A deflation has a kernel and is the cokernel of it.
    One,
    /// Deflations compose.
    Two,
    /// If `g∘f` and `f` are deflations, so is `g`.
    Three,
    /// In a 3×3 diagram with short exact columns and lower rows, the top
    /// row is short exact.
    Four,
    /// Deflations pull back along deflations.
    FourA,
    /// Given a map of short exact sequences with equal right ends, the left
    /// vertical is a deflation iff the middle one is.
    FourB,
}

impl Axiom {
    pub const ALL: [Axiom; 7] =
        [Axiom::Zero, Axiom::One, Axiom::Two, Axiom::Three, Axiom::Four, Axiom::FourA, Axiom::FourB];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Zero => "0",
            Axiom::One => "1",
            Axiom::Two => "2",
            Axiom::Three => "3",
            Axiom::Four => "4",
            Axiom::FourA => "4a",
            Axiom::FourB => "4b",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == s.trim())
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail {
        /// Largest object size involved, in exhaustive mode.
        level: Option<usize>,
        counterexample: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail { .. } => "FAIL",
            Outcome::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub outcome: Outcome,
    /// Configurations that satisfied the hypotheses and were checked.
    pub checked: u64,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {}: {} ({} configurations)", self.axiom, self.outcome.label(), self.checked)?;
        match &self.outcome {
            Outcome::Pass => Ok(()),
            Outcome::Fail { level, counterexample } => {
                if let Some(n) = level {
                    write!(f, "\n  at size {n}")?;
                }
                write!(f, "\n  counterexample: {counterexample}")
            }
            Outcome::Inconclusive { reason } => write!(f, "\n  {reason}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomsReport {
    pub reports: Vec<AxiomReport>,
}

impl AxiomsReport {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.outcome == Outcome::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.reports.iter().any(|r| matches!(r.outcome, Outcome::Fail { .. }))
    }

    pub fn any_inconclusive(&self) -> bool {
        self.reports.iter().any(|r| matches!(r.outcome, Outcome::Inconclusive { .. }))
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }
}

impl fmt::Display for AxiomsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveConfig {
    pub max_size: usize,
    /// Work units (configurations plus brute-force probes) per axiom.
    pub budget: u64,
    /// Test objects for the pullback universal property go up to this size.
    pub pullback_probe_size: usize,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        ExhaustiveConfig { max_size: 4, budget: 50_000_000, pullback_probe_size: 2 }
    }
}

enum Stop {
    Fail(String),
    Budget,
}

impl From<Error> for Stop {
    fn from(e: Error) -> Stop {
        Stop::Fail(format!("instance error: {e}"))
    }
}

type Step = std::result::Result<(), Stop>;

struct Meter {
    used: u64,
    limit: u64,
    checked: u64,
}

impl Meter {
    fn tick(&mut self, n: u64) -> Step {
        self.used += n;
        if self.used > self.limit {
            Err(Stop::Budget)
        } else {
            Ok(())
        }
    }

    fn config(&mut self) -> Step {
        self.checked += 1;
        self.tick(1)
    }
}

/// Objects and all morphisms between them at one size level.
struct Universe<'a, C: Category> {
    cat: &'a C,
    objects: Vec<C::Object>,
    fresh: Vec<bool>,
    morphisms: Vec<Vec<Vec<C::Morphism>>>,
    deflations: Vec<Vec<Vec<C::Morphism>>>,
}

impl<'a, C: Category> Universe<'a, C> {
    fn new(cat: &'a C, level: usize) -> Result<Self> {
        let objects = cat.enumerate_objects(level).ok_or(Error::Unsupported("object enumeration"))?;
        let previous = if level > 1 { cat.enumerate_objects(level - 1).unwrap_or_default() } else { Vec::new() };
        let fresh = objects.iter().map(|o| !previous.contains(o)).collect();
        let mut morphisms = Vec::with_capacity(objects.len());
        let mut deflations = Vec::with_capacity(objects.len());
        for a in &objects {
            let mut row = Vec::with_capacity(objects.len());
            let mut drow = Vec::with_capacity(objects.len());
            for b in &objects {
                let all = cat.enumerate_morphisms(a, b).ok_or(Error::Unsupported("morphism enumeration"))?;
                drow.push(all.iter().filter(|f| cat.is_deflation(f)).cloned().collect());
                row.push(all);
            }
            morphisms.push(row);
            deflations.push(drow);
        }
        Ok(Universe { cat, objects, fresh, morphisms, deflations })
    }

    fn n(&self) -> usize {
        self.objects.len()
    }

    /// Does a configuration over these object indices contain an object
    /// that is new at this level?
    fn is_new(&self, idx: &[usize]) -> bool {
        idx.iter().any(|&i| self.fresh[i])
    }

    fn all_morphisms(&self, a: &C::Object, b: &C::Object) -> Result<Vec<C::Morphism>> {
        self.cat.enumerate_morphisms(a, b).ok_or(Error::Unsupported("morphism enumeration"))
    }
}

/// Runs the selected axioms exhaustively over objects up to
/// `config.max_size`.
pub fn verify_exhaustive<C: Category>(cat: &C, axioms: &[Axiom], config: &ExhaustiveConfig) -> Result<AxiomsReport> {
    let mut levels = Vec::with_capacity(config.max_size);
    for level in 1..=config.max_size {
        levels.push(Universe::new(cat, level)?);
    }
    let mut report = AxiomsReport::default();
    for &axiom in axioms {
        let mut meter = Meter { used: 0, limit: config.budget, checked: 0 };
        let mut outcome = Outcome::Pass;
        for (k, u) in levels.iter().enumerate() {
            let r = match axiom {
                Axiom::Zero => exhaustive_zero(u, &mut meter),
                Axiom::One => exhaustive_one(u, &mut meter),
                Axiom::Two => exhaustive_two(u, &mut meter),
                Axiom::Three => exhaustive_three(u, &mut meter),
                Axiom::Four => exhaustive_four(u, &mut meter),
                Axiom::FourA => exhaustive_four_a(u, config.pullback_probe_size, &mut meter),
                Axiom::FourB => exhaustive_four_b(u, &mut meter),
            };
            match r {
                Ok(()) => {}
                Err(Stop::Fail(counterexample)) => {
                    outcome = Outcome::Fail { level: Some(k + 1), counterexample };
                    break;
                }
                Err(Stop::Budget) => {
                    outcome = Outcome::Inconclusive {
                        reason: format!("budget of {} work units exhausted at size {}", config.budget, k + 1),
                    };
                    break;
                }
            }
        }
        if let Outcome::Fail { counterexample, .. } = &outcome {
            if counterexample.starts_with("unsupported: ") {
                outcome = Outcome::Inconclusive { reason: counterexample.clone() };
            }
        }
        report.reports.push(AxiomReport { axiom, outcome, checked: meter.checked });
    }
    Ok(report)
}

fn fail<T>(msg: String) -> std::result::Result<T, Stop> {
    Err(Stop::Fail(msg))
}

fn exhaustive_zero<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    let cat = u.cat;
    for a in 0..u.n() {
        for b in 0..u.n() {
            if !u.is_new(&[a, b]) {
                continue;
            }
            for f in &u.morphisms[a][b] {
                meter.config()?;
                let back = &u.morphisms[b][a];
                meter.tick(back.len() as u64)?;
                let iso = back.iter().any(|g| cat.are_inverse(f, g));
                if iso && !cat.is_deflation(f) {
                    return fail(format!("isomorphism {f:?} is not a deflation"));
                }
            }
        }
        if u.fresh[a] {
            meter.config()?;
            let z = cat.to_zero(&u.objects[a]);
            if !cat.is_deflation(&z) {
                return fail(format!("{z:?} is not a deflation"));
            }
        }
    }
    Ok(())
}

/// Brute-force kernel and cokernel universal properties for one deflation.
fn check_deflation<C: Category>(u: &Universe<C>, p: &C::Morphism, meter: &mut Meter) -> Step {
    let cat = u.cat;
    let ker = match cat.kernel(p) {
        Ok(k) => k,
        Err(e) => return fail(format!("deflation {p:?} has no kernel: {e}")),
    };
    let k = &ker.inclusion;
    if !cat.is_zero(&cat.compose(p, k)?) {
        return fail(format!("kernel {k:?} of {p:?} does not compose to zero"));
    }
    let b = cat.source(p);
    let c = cat.target(p);
    for x in &u.objects {
        let lifts = u.all_morphisms(x, &ker.object)?;
        for g in u.all_morphisms(x, &b)? {
            meter.tick(1 + lifts.len() as u64)?;
            if !cat.is_zero(&cat.compose(p, &g)?) {
                continue;
            }
            let mut count = 0;
            for w in &lifts {
                if cat.equal(&cat.compose(k, w)?, &g) {
                    count += 1;
                }
            }
            if count != 1 {
                return fail(format!(
                    "{k:?} is not a kernel of {p:?}: {g:?} factors through it in {count} ways"
                ));
            }
        }
    }
    for y in &u.objects {
        let colifts = u.all_morphisms(&c, y)?;
        for h in u.all_morphisms(&b, y)? {
            meter.tick(1 + colifts.len() as u64)?;
            if !cat.is_zero(&cat.compose(&h, k)?) {
                continue;
            }
            let mut count = 0;
            for v in &colifts {
                if cat.equal(&cat.compose(v, p)?, &h) {
                    count += 1;
                }
            }
            if count != 1 {
                return fail(format!(
                    "{p:?} is not a cokernel of its kernel {k:?}: {h:?} factors through it in {count} ways"
                ));
            }
        }
    }
    Ok(())
}

/// Every deflation is rechecked at each level, against the larger set of
/// test objects.
fn exhaustive_one<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    for b in 0..u.n() {
        for c in 0..u.n() {
            for p in &u.deflations[b][c] {
                meter.config()?;
                check_deflation(u, p, meter)?;
            }
        }
    }
    Ok(())
}

fn exhaustive_two<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    let cat = u.cat;
    for a in 0..u.n() {
        for b in 0..u.n() {
            for c in 0..u.n() {
                if !u.is_new(&[a, b, c]) {
                    continue;
                }
                for f in &u.deflations[a][b] {
                    for g in &u.deflations[b][c] {
                        meter.config()?;
                        let gf = cat.compose(g, f)?;
                        if !cat.is_deflation(&gf) {
                            return fail(format!("{g:?} ∘ {f:?} = {gf:?} is not a deflation"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn exhaustive_three<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    let cat = u.cat;
    for a in 0..u.n() {
        for b in 0..u.n() {
            for c in 0..u.n() {
                if !u.is_new(&[a, b, c]) {
                    continue;
                }
                for f in &u.deflations[a][b] {
                    for g in &u.morphisms[b][c] {
                        meter.tick(1)?;
                        if !cat.is_deflation(&cat.compose(g, f)?) {
                            continue;
                        }
                        meter.config()?;
                        if !cat.is_deflation(g) {
                            return fail(format!("{g:?} ∘ {f:?} and {f:?} are deflations but {g:?} is not"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks one grid given by its lower-right deflations. Configurations
/// whose completion does not have short exact columns and lower rows are
/// skipped.
fn check_grid<C: Category>(
    cat: &C,
    q: &C::Morphism,
    g2: &C::Morphism,
    g3: &C::Morphism,
    r: &C::Morphism,
    meter: &mut Meter,
) -> Step {
    let Some(grid) = grid_from_deflations(cat, q, g2, g3, r) else {
        return Ok(());
    };
    let exact = |i: &C::Morphism, p: &C::Morphism| cat.check_short_exact(i, p).map(|r| r.is_exact()).unwrap_or(false);
    let hypotheses = exact(&grid.phi1_prime, &grid.phi2_prime)
        && exact(&grid.phi1_pp, &grid.phi2_pp)
        && (0..3).all(|k| exact(&grid.f[k], &grid.g[k]));
    if !hypotheses {
        return Ok(());
    }
    meter.config()?;
    let report = cat.check_short_exact(&grid.phi1, &grid.phi2)?;
    if !report.is_exact() {
        return fail(format!(
            "grid with q = {q:?}, g2 = {g2:?}, g3 = {g3:?}, r = {r:?}: top row {:?}, {:?} is not short exact ({})",
            grid.phi1,
            grid.phi2,
            report.failures().join(", ")
        ));
    }
    Ok(())
}

fn exhaustive_four<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    let cat = u.cat;
    let n = u.n();
    for b2 in 0..n {
        for b3 in 0..n {
            for c2 in 0..n {
                for c3 in 0..n {
                    if !u.is_new(&[b2, b3, c2, c3]) {
                        continue;
                    }
                    for q in &u.deflations[b2][b3] {
                        for g2 in &u.deflations[b2][c2] {
                            for g3 in &u.deflations[b3][c3] {
                                let g3q = cat.compose(g3, q)?;
                                for r in &u.deflations[c2][c3] {
                                    meter.tick(1)?;
                                    if !cat.equal(&cat.compose(r, g2)?, &g3q) {
                                        continue;
                                    }
                                    check_grid(cat, q, g2, g3, r, meter)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn exhaustive_four_a<C: Category>(u: &Universe<C>, probe_size: usize, meter: &mut Meter) -> Step {
    let cat = u.cat;
    let probes: Vec<&C::Object> = match cat.enumerate_objects(probe_size) {
        Some(small) => u.objects.iter().filter(|o| small.contains(o)).collect(),
        None => Vec::new(),
    };
    for a in 0..u.n() {
        for b in 0..u.n() {
            for c in 0..u.n() {
                if !u.is_new(&[a, b, c]) && probes.len() == probe_count_below(u, probe_size) {
                    continue;
                }
                for p in &u.deflations[b][c] {
                    for f in &u.deflations[a][c] {
                        meter.config()?;
                        let pb = match cat.pullback_of_deflation(p, f) {
                            Ok(pb) => pb,
                            Err(Error::Unsupported(what)) => return fail(format!("unsupported: {what}")),
                            Err(e) => return fail(format!("no pullback of {p:?} along {f:?}: {e}")),
                        };
                        let (pl, fp) = (cat.compose(p, &pb.lifted)?, cat.compose(f, &pb.pulled_back)?);
                        if !cat.equal(&pl, &fp) {
                            return fail(format!("pullback square of {p:?} along {f:?} does not commute"));
                        }
                        for x_obj in &probes {
                            let lifts = u.all_morphisms(x_obj, &pb.apex)?;
                            for x in u.all_morphisms(x_obj, &cat.source(p))? {
                                let px = cat.compose(p, &x)?;
                                for y in u.all_morphisms(x_obj, &cat.source(f))? {
                                    meter.tick(1 + lifts.len() as u64)?;
                                    if !cat.equal(&px, &cat.compose(f, &y)?) {
                                        continue;
                                    }
                                    let mut count = 0;
                                    for w in &lifts {
                                        if cat.equal(&cat.compose(&pb.lifted, w)?, &x)
                                            && cat.equal(&cat.compose(&pb.pulled_back, w)?, &y)
                                        {
                                            count += 1;
                                        }
                                    }
                                    if count != 1 {
                                        return fail(format!(
                                            "apex {:?} of {p:?} along {f:?} is not a pullback: ({x:?}, {y:?}) lifts in {count} ways",
                                            pb.apex
                                        ));
                                    }
                                }
                            }
                        }
                        if !cat.is_deflation(&pb.pulled_back) {
                            return fail(format!(
                                "pullback of {p:?} along {f:?}: {:?} is not a deflation",
                                pb.pulled_back
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Number of probe objects available one level down.
fn probe_count_below<C: Category>(u: &Universe<C>, probe_size: usize) -> usize {
    let below: Vec<&C::Object> = u.objects.iter().zip(&u.fresh).filter(|(_, f)| !**f).map(|(o, _)| o).collect();
    match u.cat.enumerate_objects(probe_size) {
        Some(small) => below.iter().filter(|o| small.contains(o)).count(),
        None => 0,
    }
}

/// `f1` induced on kernels; compares deflation status of `f1` and `f2`.
fn check_kernel_square<C: Category>(
    cat: &C,
    phi2: &C::Morphism,
    phi2_prime: &C::Morphism,
    f2: &C::Morphism,
    meter: &mut Meter,
) -> Step {
    meter.config()?;
    let phi1 = cat.kernel(phi2)?.inclusion;
    let phi1_prime = cat.kernel(phi2_prime)?.inclusion;
    let f1 = cat.kernel_lift(phi2_prime, &phi1_prime, &cat.compose(f2, &phi1)?)?;
    let (d1, d2) = (cat.is_deflation(&f1), cat.is_deflation(f2));
    if d1 != d2 {
        return fail(format!(
            "over phi2 = {phi2:?}, phi2' = {phi2_prime:?}: f2 = {f2:?} is{} a deflation but f1 = {f1:?} is{}",
            if d2 { "" } else { " not" },
            if d1 { "" } else { " not" }
        ));
    }
    Ok(())
}

fn exhaustive_four_b<C: Category>(u: &Universe<C>, meter: &mut Meter) -> Step {
    let cat = u.cat;
    for a2 in 0..u.n() {
        for a3 in 0..u.n() {
            for b2 in 0..u.n() {
                if !u.is_new(&[a2, a3, b2]) {
                    continue;
                }
                for phi2 in &u.deflations[a2][a3] {
                    for phi2_prime in &u.deflations[b2][a3] {
                        for f2 in &u.morphisms[a2][b2] {
                            meter.tick(1)?;
                            if !cat.equal(&cat.compose(phi2_prime, f2)?, phi2) {
                                continue;
                            }
                            check_kernel_square(cat, phi2, phi2_prime, f2, meter)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Random configurations that satisfy the hypotheses of each axiom.
pub trait AxiomSampler<C: Category> {
    fn object(&mut self) -> C::Object;
    fn morphism(&mut self, a: &C::Object, b: &C::Object) -> C::Morphism;
    fn isomorphism(&mut self) -> C::Morphism;
    fn deflation(&mut self) -> C::Morphism;
    fn deflation_from(&mut self, b: &C::Object) -> C::Morphism;
    fn deflation_onto(&mut self, c: &C::Object) -> C::Morphism;
    /// Deflations `q`, `g2`, `g3`, `r` with `r∘g2 = g3∘q`.
    fn grid_data(&mut self) -> [C::Morphism; 4];
    /// `phi2`, `phi2'` deflations and `f2` with `phi2'∘f2 = phi2`.
    fn kernel_square(&mut self) -> [C::Morphism; 3];
    fn coin(&mut self) -> bool;
}

/// Runs each selected axiom on `samples` random configurations.
pub fn verify_sampled<C: Category, S: AxiomSampler<C>>(
    cat: &C,
    sampler: &mut S,
    axioms: &[Axiom],
    samples: u64,
) -> AxiomsReport {
    let mut report = AxiomsReport::default();
    for &axiom in axioms {
        let mut meter = Meter { used: 0, limit: u64::MAX, checked: 0 };
        let mut outcome = Outcome::Pass;
        for _ in 0..samples {
            let r = match axiom {
                Axiom::Zero => sampled_zero(cat, sampler, &mut meter),
                Axiom::One => sampled_one(cat, sampler, &mut meter),
                Axiom::Two => sampled_two(cat, sampler, &mut meter),
                Axiom::Three => sampled_three(cat, sampler, &mut meter),
                Axiom::Four => {
                    let [q, g2, g3, r] = sampler.grid_data();
                    check_grid(cat, &q, &g2, &g3, &r, &mut meter)
                }
                Axiom::FourA => sampled_four_a(cat, sampler, &mut meter),
                Axiom::FourB => {
                    let [phi2, phi2_prime, f2] = sampler.kernel_square();
                    check_kernel_square(cat, &phi2, &phi2_prime, &f2, &mut meter)
                }
            };
            match r {
                Ok(()) => {}
                Err(Stop::Fail(counterexample)) => {
                    outcome = Outcome::Fail { level: None, counterexample };
                    break;
                }
                Err(Stop::Budget) => unreachable!("sampled mode has no budget"),
            }
        }
        if outcome == Outcome::Pass && meter.checked == 0 {
            outcome = Outcome::Inconclusive { reason: "no sampled configuration met the hypotheses".into() };
        }
        report.reports.push(AxiomReport { axiom, outcome, checked: meter.checked });
    }
    report
}

fn sampled_zero<C: Category, S: AxiomSampler<C>>(cat: &C, s: &mut S, meter: &mut Meter) -> Step {
    meter.config()?;
    let f = if s.coin() { s.isomorphism() } else { cat.to_zero(&s.object()) };
    if !cat.is_deflation(&f) {
        return fail(format!("{f:?} is not a deflation"));
    }
    Ok(())
}

fn sampled_one<C: Category, S: AxiomSampler<C>>(cat: &C, s: &mut S, meter: &mut Meter) -> Step {
    meter.config()?;
    let p = s.deflation();
    let ker = match cat.kernel(&p) {
        Ok(k) => k,
        Err(e) => return fail(format!("deflation {p:?} has no kernel: {e}")),
    };
    let k = &ker.inclusion;
    if !cat.is_kernel_of(k, &p) || !cat.is_cokernel_of(&p, k) {
        return fail(format!("{p:?} and its kernel {k:?} are not short exact"));
    }
    let x = s.object();
    let h = s.morphism(&x, &ker.object);
    let g = cat.compose(k, &h)?;
    let w = cat.kernel_lift(&p, k, &g)?;
    if !cat.equal(&w, &h) {
        return fail(format!("kernel lift of {g:?} through {k:?} is {w:?}, expected {h:?}"));
    }
    let y = s.object();
    let h = s.morphism(&cat.target(&p), &y);
    let g = cat.compose(&h, &p)?;
    let v = cat.cokernel_colift(k, &p, &g)?;
    if !cat.equal(&v, &h) {
        return fail(format!("cokernel colift of {g:?} through {p:?} is {v:?}, expected {h:?}"));
    }
    Ok(())
}

fn sampled_two<C: Category, S: AxiomSampler<C>>(cat: &C, s: &mut S, meter: &mut Meter) -> Step {
    meter.config()?;
    let f = s.deflation();
    let g = s.deflation_from(&cat.target(&f));
    let gf = cat.compose(&g, &f)?;
    if !cat.is_deflation(&gf) {
        return fail(format!("{g:?} ∘ {f:?} is not a deflation"));
    }
    Ok(())
}

fn sampled_three<C: Category, S: AxiomSampler<C>>(cat: &C, s: &mut S, meter: &mut Meter) -> Step {
    let f = s.deflation();
    let b = cat.target(&f);
    let g = if s.coin() {
        s.deflation_from(&b)
    } else {
        let c = s.object();
        s.morphism(&b, &c)
    };
    if !cat.is_deflation(&cat.compose(&g, &f)?) {
        return Ok(());
    }
    meter.config()?;
    if !cat.is_deflation(&g) {
        return fail(format!("{g:?} ∘ {f:?} and {f:?} are deflations but {g:?} is not"));
    }
    Ok(())
}

fn sampled_four_a<C: Category, S: AxiomSampler<C>>(cat: &C, s: &mut S, meter: &mut Meter) -> Step {
    meter.config()?;
    let p = s.deflation();
    let f = s.deflation_onto(&cat.target(&p));
    let pb = match cat.pullback_of_deflation(&p, &f) {
        Ok(pb) => pb,
        Err(e) => return fail(format!("no pullback of {p:?} along {f:?}: {e}")),
    };
    if !cat.equal(&cat.compose(&p, &pb.lifted)?, &cat.compose(&f, &pb.pulled_back)?) {
        return fail(format!("pullback square of {p:?} along {f:?} does not commute"));
    }
    let x_obj = s.object();
    let w = s.morphism(&x_obj, &pb.apex);
    let (x, y) = (cat.compose(&pb.lifted, &w)?, cat.compose(&pb.pulled_back, &w)?);
    let lift = cat.pullback_lift(&p, &f, &pb, &x, &y)?;
    if !cat.equal(&lift, &w) {
        return fail(format!("pullback lift of ({x:?}, {y:?}) is {lift:?}, expected {w:?}"));
    }
    if !cat.is_deflation(&pb.pulled_back) {
        return fail(format!("pullback of {p:?} along {f:?}: {:?} is not a deflation", pb.pulled_back));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointed::{DeflationClass, PointedSets};

    fn small() -> ExhaustiveConfig {
        ExhaustiveConfig { max_size: 3, ..ExhaustiveConfig::default() }
    }

    #[test]
    fn kernel_collapse_pullback_fails_at_size_two() {
        let cat = PointedSets::new(DeflationClass::KernelCollapse);
        let r = verify_exhaustive(&cat, &[Axiom::FourA], &small()).unwrap();
        match &r.reports[0].outcome {
            Outcome::Fail { level, counterexample } => {
                assert_eq!(*level, Some(2));
                assert!(counterexample.contains("is not a deflation"), "{counterexample}");
            }
            other => panic!("expected a failure, got {other:?}"),
        }
    }

    #[test]
    fn all_surjections_fail_axiom_one_on_a_fold() {
        let cat = PointedSets::new(DeflationClass::AllSurjections);
        let r = verify_exhaustive(&cat, &[Axiom::One], &small()).unwrap();
        match &r.reports[0].outcome {
            Outcome::Fail { level, counterexample } => {
                assert_eq!(*level, Some(3));
                assert!(counterexample.contains("not a cokernel"), "{counterexample}");
            }
            other => panic!("expected a failure, got {other:?}"),
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let cat = PointedSets::default();
        let cfg = ExhaustiveConfig { max_size: 3, budget: 10, pullback_probe_size: 2 };
        let r = verify_exhaustive(&cat, &[Axiom::Two], &cfg).unwrap();
        assert!(matches!(r.reports[0].outcome, Outcome::Inconclusive { .. }));
        assert!(!r.all_pass());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(Axiom::parse(a.name()), Some(a));
        }
        assert_eq!(Axiom::parse("5"), None);
    }
}
