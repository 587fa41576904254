//! The subcommands, generic over the two file instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use exactcat::axioms::{verify_exhaustive, verify_sampled, Axiom, AxiomsReport, ExhaustiveConfig, Outcome};
use exactcat::category::CategoryExt;
use exactcat::chain::{les_of_complexes, AdmissibleComplex, AdmissibleComplexOf, ComplexSes};
use exactcat::engine::exact::{check_long_exact_auto, Joint, LongExactVerdict};
use exactcat::engine::snake::{snake, SnakeDiagram};
use exactcat::gen::FgabGen;
use exactcat::{AbMorphism, Category, DeflationClass, Error, Fgab, FpAbelianGroup, PointedMap, PointedSet, PointedSets};

use crate::format::{
    show_matrix, write_group, write_matrix, write_table, Command, DiagramFile, Grading, InstanceTag, ObjectSpec,
    ParseError, Payload,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A check answered "no", or could not be decided within budget.
    pub const FALSE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const HYPOTHESIS: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(ParseError),
    Input(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Input(_) => exit::INPUT,
            CliError::Engine(e) => match e {
                Error::Hypothesis(_) | Error::Precondition(_) => exit::HYPOTHESIS,
                Error::Conclusion(_) | Error::Budget(_) => exit::FALSE,
                Error::NotComposable(_) | Error::Invalid(_) | Error::Unsupported(_) => exit::INPUT,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) | CliError::Input(m) => write!(f, "{m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

/// Rendered report with its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// What the file format needs from an instance.
pub trait FileInstance: Category {
    const TAG: InstanceTag;
    fn object_from(&self, spec: &ObjectSpec) -> Option<Self::Object>;
    fn morphism_from(&self, source: &Self::Object, target: &Self::Object, payload: &Payload) -> exactcat::Result<Self::Morphism>;
    fn show_object(&self, o: &Self::Object) -> String;
    /// `source -> target, payload` in human-readable coordinates.
    fn show_map(&self, m: &Self::Morphism) -> String;
    fn write_object(&self, o: &Self::Object) -> String;
    fn write_payload(&self, m: &Self::Morphism) -> String;
    /// Free rank, for Euler characteristics; `None` if meaningless.
    fn rank(&self, _o: &Self::Object) -> Option<usize> {
        None
    }
}

impl FileInstance for Fgab {
    const TAG: InstanceTag = InstanceTag::Fgab;

    fn object_from(&self, spec: &ObjectSpec) -> Option<FpAbelianGroup> {
        match spec {
            ObjectSpec::Group(g) => Some(g.clone()),
            ObjectSpec::Pointed(_) => None,
        }
    }

    fn morphism_from(&self, source: &FpAbelianGroup, target: &FpAbelianGroup, payload: &Payload) -> exactcat::Result<AbMorphism> {
        match payload {
            Payload::Matrix(m) => AbMorphism::new(source.clone(), target.clone(), m.clone()),
            Payload::Table(_) => Err(Error::Invalid("an abelian group map needs a matrix".into())),
        }
    }

    fn show_object(&self, o: &FpAbelianGroup) -> String {
        o.to_string()
    }

    /// The matrix in canonical generators of source and target.
    fn show_map(&self, m: &AbMorphism) -> String {
        let (_, into_source) = self.canonical_form(m.source());
        let (_, into_target) = self.canonical_form(m.target());
        let back = self.inverse(&into_source).expect("canonical form is an isomorphism");
        let c = self.compose_all(&[&into_target, m, &back]).expect("composable");
        format!("{} -> {}, matrix {}", m.source(), m.target(), show_matrix(c.matrix()))
    }

    fn write_object(&self, o: &FpAbelianGroup) -> String {
        write_group(o)
    }

    fn write_payload(&self, m: &AbMorphism) -> String {
        write_matrix(m.matrix())
    }

    fn rank(&self, o: &FpAbelianGroup) -> Option<usize> {
        Some(o.invariants().free_rank)
    }
}

impl FileInstance for PointedSets {
    const TAG: InstanceTag = InstanceTag::PointedSets;

    fn object_from(&self, spec: &ObjectSpec) -> Option<PointedSet> {
        match spec {
            ObjectSpec::Pointed(p) => Some(*p),
            ObjectSpec::Group(_) => None,
        }
    }

    fn morphism_from(&self, source: &PointedSet, target: &PointedSet, payload: &Payload) -> exactcat::Result<PointedMap> {
        match payload {
            Payload::Table(t) => PointedMap::new(*source, *target, t.clone()),
            Payload::Matrix(_) => Err(Error::Invalid("a pointed map needs a table".into())),
        }
    }

    fn show_object(&self, o: &PointedSet) -> String {
        o.to_string()
    }

    fn show_map(&self, m: &PointedMap) -> String {
        format!("{} -> {}, table {}", m.source(), m.target(), write_table(m.table()))
    }

    fn write_object(&self, o: &PointedSet) -> String {
        o.to_string()
    }

    fn write_payload(&self, m: &PointedMap) -> String {
        write_table(m.table())
    }
}

/// Objects and maps of a file, built in one instance.
pub struct Resolved<'a, C: FileInstance> {
    pub cat: &'a C,
    pub file: &'a DiagramFile,
    objects: BTreeMap<String, C::Object>,
}

impl<'a, C: FileInstance> Resolved<'a, C> {
    pub fn new(cat: &'a C, file: &'a DiagramFile) -> Result<Self, CliError> {
        let mut objects = BTreeMap::new();
        for (name, spec) in &file.objects {
            let o = cat
                .object_from(spec)
                .ok_or_else(|| CliError::Input(format!("object {name} does not belong to {}", C::TAG.name())))?;
            objects.insert(name.clone(), o);
        }
        Ok(Resolved { cat, file, objects })
    }

    pub fn object(&self, name: &str) -> Result<C::Object, CliError> {
        self.objects.get(name).cloned().ok_or_else(|| CliError::Input(format!("unknown object {name}")))
    }

    pub fn map(&self, name: &str) -> Result<C::Morphism, CliError> {
        let decl = self.file.maps.get(name).ok_or_else(|| CliError::Input(format!("unknown map {name}")))?;
        let (s, t) = (self.object(&decl.source)?, self.object(&decl.target)?);
        self.cat
            .morphism_from(&s, &t, &decl.payload)
            .map_err(|e| CliError::Input(format!("line {}: map {name}: {e}", decl.line)))
    }

    pub fn maps(&self, names: &[String]) -> Result<Vec<C::Morphism>, CliError> {
        names.iter().map(|n| self.map(n)).collect()
    }

    /// The complex in cohomological indexing, with the label of each
    /// degree in the file's grading.
    pub fn complex(&self, name: &str) -> Result<(AdmissibleComplexOf<C>, Vec<String>), CliError> {
        let decl = self.file.complexes.get(name).ok_or_else(|| CliError::Input(format!("unknown complex {name}")))?;
        let mut objects: Vec<C::Object> = decl.objects.iter().map(|o| self.object(o)).collect::<Result<_, _>>()?;
        let mut maps = self.maps(&decl.maps)?;
        let n = objects.len() as i64;
        let (lo, labels) = match self.file.grading {
            Grading::Cohomological => (decl.from, (0..n).map(|k| format!("H^{}", decl.from + k)).collect()),
            Grading::Homological => {
                objects.reverse();
                maps.reverse();
                let top = decl.from + n - 1;
                (-top, (0..n).map(|k| format!("H{}", top - k)).collect())
            }
        };
        for (k, m) in maps.iter().enumerate() {
            if self.cat.source(m) != objects[k] || self.cat.target(m) != objects[k + 1] {
                return Err(CliError::Input(format!(
                    "complex {name}: differential {} does not connect consecutive objects",
                    match self.file.grading {
                        Grading::Cohomological => decl.maps[k].clone(),
                        Grading::Homological => decl.maps[decl.maps.len() - 1 - k].clone(),
                    }
                )));
            }
        }
        let complex = AdmissibleComplex::with_objects(self.cat, lo, objects, &maps)?;
        Ok((complex, labels))
    }
}

fn default_command(file: &DiagramFile, wanted: &str) -> Result<Command, CliError> {
    if let Some(c) = &file.command {
        let matches = matches!(
            (c, wanted),
            (Command::Homology(_), "homology")
                | (Command::Snake(_), "snake")
                | (Command::Les(_), "les")
                | (Command::Verify(_), "verify")
                | (Command::Axioms, "axioms")
        );
        if !matches {
            return Err(CliError::Input(format!("file's command is not {wanted}")));
        }
        return Ok(c.clone());
    }
    let single = |keys: Vec<&String>, kind: &str| -> Result<String, CliError> {
        match keys.as_slice() {
            [one] => Ok((*one).clone()),
            _ => Err(CliError::Input(format!("file has {} {kind}s; name one with a {wanted} line", keys.len()))),
        }
    };
    Ok(match wanted {
        "homology" => Command::Homology(single(file.complexes.keys().collect(), "complex")?),
        "verify" => Command::Verify(single(file.sequences.keys().collect(), "sequence")?),
        "snake" => Command::Snake(["phi1", "phi2", "phi1'", "phi2'", "f1", "f2", "f3"].map(String::from)),
        "les" => Command::Les(["A", "A'", "A''", "i", "p"].map(String::from)),
        _ => Command::Axioms,
    })
}

pub fn read_file(path: &std::path::Path) -> Result<DiagramFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(DiagramFile::parse(&text)?)
}

fn header<C: FileInstance>(out: &mut String) {
    let _ = writeln!(out, "instance {}", C::TAG.name());
}

fn write_object_line<C: FileInstance>(cat: &C, out: &mut String, name: &str, o: &C::Object) {
    let _ = writeln!(out, "object {name} = {}", cat.write_object(o));
}

fn write_map_line<C: FileInstance>(cat: &C, out: &mut String, name: &str, src: &str, tgt: &str, m: &C::Morphism) {
    let _ = writeln!(out, "map {name} : {src} -> {tgt} = {}", cat.write_payload(m));
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn joint_label(j: Joint, names: &[String]) -> String {
    match j {
        Joint::Start => "start".into(),
        Joint::End => "end".into(),
        Joint::Interior(k) => format!("at {}", names.get(k).cloned().unwrap_or_else(|| k.to_string())),
    }
}

fn write_verdict(out: &mut String, v: &LongExactVerdict, names: &[String], format: OutputFormat) {
    for j in &v.joints {
        let label = joint_label(j.joint, names);
        match format {
            OutputFormat::Text => {
                let detail = if j.report.is_exact() {
                    String::new()
                } else {
                    format!(" ({})", j.report.failures().join(", "))
                };
                let _ = writeln!(out, "exact {label}: {}{detail}", yes(j.report.is_exact()));
            }
            OutputFormat::Machine => {
                let key = match j.joint {
                    Joint::Start => "start".to_string(),
                    Joint::End => "end".to_string(),
                    Joint::Interior(k) => k.to_string(),
                };
                let _ = writeln!(out, "verdict exact-{key} = {}", j.report.is_exact());
            }
        }
    }
}

// ---------------------------------------------------------------- homology

#[derive(Clone, Debug)]
pub struct HomologyReport<O> {
    /// Label (`H2` or `H^2`) and group, in the file's degree order.
    pub groups: Vec<(String, O)>,
}

pub fn homology<C: FileInstance>(cat: &C, file: &DiagramFile) -> Result<HomologyReport<C::Object>, CliError> {
    let Command::Homology(name) = default_command(file, "homology")? else { unreachable!() };
    let r = Resolved::new(cat, file)?;
    let (complex, labels) = r.complex(&name)?;
    let mut groups = Vec::new();
    for (k, label) in labels.iter().enumerate() {
        let h = complex.cohomology(cat, complex.lo + k as i64)?;
        if !h.is_verified() {
            return Err(Error::Conclusion(format!("{label}: the two cohomology constructions disagree")).into());
        }
        groups.push((label.clone(), h.object().clone()));
    }
    if file.grading == Grading::Homological {
        groups.reverse();
    }
    Ok(HomologyReport { groups })
}

pub fn render_homology<C: FileInstance>(cat: &C, report: &HomologyReport<C::Object>, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            if report.groups.is_empty() {
                out.push_str("empty complex: every group is 0\n");
            } else {
                let parts: Vec<String> = report.groups.iter().map(|(l, g)| format!("{l} = {}", cat.show_object(g))).collect();
                let _ = writeln!(out, "{}", parts.join(", "));
            }
        }
        OutputFormat::Machine => {
            header::<C>(&mut out);
            for (l, g) in &report.groups {
                write_object_line(cat, &mut out, l, g);
            }
        }
    }
    out
}

// ---------------------------------------------------------------- snake

pub fn run_snake<C: FileInstance>(cat: &C, file: &DiagramFile, format: OutputFormat) -> Result<Output, CliError> {
    let Command::Snake(names) = default_command(file, "snake")? else { unreachable!() };
    let r = Resolved::new(cat, file)?;
    let m = r.maps(&names)?;
    let d = SnakeDiagram::new(cat, (m[0].clone(), m[1].clone()), (m[2].clone(), m[3].clone()), [m[4].clone(), m[5].clone(), m[6].clone()])?;
    let res = snake(cat, &d)?;
    let object_names: Vec<String> = ["K1", "K2", "K3", "C1", "C2", "C3"].map(String::from).to_vec();
    let objects: Vec<C::Object> = res
        .kernels
        .iter()
        .map(|k| k.object.clone())
        .chain(res.cokernels.iter().map(|c| c.object.clone()))
        .collect();
    let maps = [("psi1", &res.psi1), ("psi2", &res.psi2), ("delta", &res.delta), ("psi1'", &res.psi1_prime), ("psi2'", &res.psi2_prime)];
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            for (n, o) in object_names.iter().zip(&objects) {
                let _ = writeln!(out, "{n} = {}", cat.show_object(o));
            }
            for (n, f) in maps {
                let _ = writeln!(out, "{n}: {}", cat.show_map(f));
            }
            write_verdict(&mut out, &res.exactness, &object_names, format);
            let _ = writeln!(out, "psi1 inflation: {}", yes(res.psi1_is_inflation));
            let _ = writeln!(out, "psi2' deflation: {}", yes(res.psi2_prime_is_deflation));
            let _ = writeln!(out, "verified: {}", yes(res.is_verified()));
        }
        OutputFormat::Machine => {
            header::<C>(&mut out);
            for (n, o) in object_names.iter().zip(&objects) {
                write_object_line(cat, &mut out, n, o);
            }
            for (k, (n, f)) in maps.iter().enumerate() {
                write_map_line(cat, &mut out, n, &object_names[k], &object_names[k + 1], f);
            }
            let _ = writeln!(out, "sequence six-term = psi1 psi2 delta psi1' psi2'");
            write_verdict(&mut out, &res.exactness, &object_names, format);
            let _ = writeln!(out, "verdict psi1-inflation = {}", res.psi1_is_inflation);
            let _ = writeln!(out, "verdict psi2'-deflation = {}", res.psi2_prime_is_deflation);
            let _ = writeln!(out, "verdict verified = {}", res.is_verified());
        }
    }
    Ok(Output { text: out, code: if res.is_verified() { exit::OK } else { exit::FALSE } })
}

// ---------------------------------------------------------------- les

pub fn run_les<C: FileInstance>(cat: &C, file: &DiagramFile, format: OutputFormat) -> Result<Output, CliError> {
    let Command::Les(names) = default_command(file, "les")? else { unreachable!() };
    let r = Resolved::new(cat, file)?;
    let (a, _) = r.complex(&names[0])?;
    let (a_prime, _) = r.complex(&names[1])?;
    let (a_pp, _) = r.complex(&names[2])?;
    if (a.lo, a.hi()) != (a_prime.lo, a_prime.hi()) || (a.lo, a.hi()) != (a_pp.lo, a_pp.hi()) {
        return Err(CliError::Input("the three complexes must share a window".into()));
    }
    let mut i = r.maps(&file.sequences[&names[3]])?;
    let mut p = r.maps(&file.sequences[&names[4]])?;
    if file.grading == Grading::Homological {
        i.reverse();
        p.reverse();
    }
    let ses = ComplexSes { a, a_prime, a_pp, i, p };
    let les = les_of_complexes(cat, &ses)?;
    let label = |deg: i64| match file.grading {
        Grading::Cohomological => format!("{deg}"),
        Grading::Homological => format!("{}", -deg),
    };
    let mut out = String::new();
    let mut object_names = Vec::new();
    match format {
        OutputFormat::Text => {
            for d in &les.degrees {
                let [h, hp, hpp] = &d.cohomology;
                let _ = writeln!(
                    out,
                    "degree {}: H(A) = {}, H(A') = {}, H(A'') = {}",
                    label(d.degree),
                    cat.show_object(h.object()),
                    cat.show_object(hp.object()),
                    cat.show_object(hpp.object())
                );
                let _ = writeln!(out, "  u: {}", cat.show_map(&d.u));
                let _ = writeln!(out, "  v: {}", cat.show_map(&d.v));
                let _ = writeln!(out, "  delta: {}", cat.show_map(&d.delta));
                for s in ["A", "A'", "A''"] {
                    object_names.push(format!("H({s}) in degree {}", label(d.degree)));
                }
            }
            let _ = writeln!(out, "long exact: {}", yes(les.is_exact()));
        }
        OutputFormat::Machine => {
            header::<C>(&mut out);
            let mut seq = Vec::new();
            for (n, d) in les.degrees.iter().enumerate() {
                let deg = label(d.degree);
                let names3 = [format!("HA.{deg}"), format!("HA'.{deg}"), format!("HA''.{deg}")];
                for (n, h) in names3.iter().zip(&d.cohomology) {
                    write_object_line(cat, &mut out, n, h.object());
                }
                let next = format!("HA.{}", label(d.degree + 1));
                if n + 1 == les.degrees.len() {
                    write_object_line(cat, &mut out, &next, &cat.target(&d.delta));
                }
                write_map_line(cat, &mut out, &format!("u.{deg}"), &names3[0], &names3[1], &d.u);
                write_map_line(cat, &mut out, &format!("v.{deg}"), &names3[1], &names3[2], &d.v);
                write_map_line(cat, &mut out, &format!("delta.{deg}"), &names3[2], &next, &d.delta);
                seq.extend([format!("u.{deg}"), format!("v.{deg}"), format!("delta.{deg}")]);
            }
            let _ = writeln!(out, "sequence les = {}", seq.join(" "));
            let _ = writeln!(out, "verdict long-exact = {}", les.is_exact());
        }
    }
    Ok(Output { text: out, code: if les.is_exact() { exit::OK } else { exit::FALSE } })
}

// ---------------------------------------------------------------- verify

pub fn run_verify<C: FileInstance>(cat: &C, file: &DiagramFile, format: OutputFormat) -> Result<Output, CliError> {
    let Command::Verify(name) = default_command(file, "verify")? else { unreachable!() };
    let r = Resolved::new(cat, file)?;
    let seq = r.maps(&file.sequences[&name])?;
    let verdict = check_long_exact_auto(cat, &seq)?;
    let decls: Vec<_> = file.sequences[&name].iter().map(|m| &file.maps[m]).collect();
    let mut names: Vec<String> = decls.iter().map(|d| d.source.clone()).collect();
    if let Some(last) = decls.last() {
        names.push(last.target.clone());
    }
    let mut out = String::new();
    if format == OutputFormat::Machine {
        header::<C>(&mut out);
    }
    write_verdict(&mut out, &verdict, &names, format);
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "long exact: {}", yes(verdict.is_exact()));
        }
        OutputFormat::Machine => {
            let _ = writeln!(out, "verdict long-exact = {}", verdict.is_exact());
        }
    }
    Ok(Output { text: out, code: if verdict.is_exact() { exit::OK } else { exit::FALSE } })
}

// ---------------------------------------------------------------- axioms

#[derive(Clone, Debug)]
pub struct AxiomOptions {
    pub instance: InstanceTag,
    pub deflations: DeflationClass,
    pub max_size: usize,
    pub budget: u64,
    pub samples: u64,
    pub seed: u64,
    pub axioms: Vec<Axiom>,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            instance: InstanceTag::PointedSets,
            deflations: DeflationClass::KernelCollapse,
            max_size: 4,
            budget: ExhaustiveConfig::default().budget,
            samples: 500,
            seed: 0,
            axioms: Axiom::ALL.to_vec(),
        }
    }
}

pub fn axioms(opts: &AxiomOptions) -> Result<AxiomsReport, CliError> {
    Ok(match opts.instance {
        InstanceTag::PointedSets => {
            let cfg = ExhaustiveConfig { max_size: opts.max_size, budget: opts.budget, ..ExhaustiveConfig::default() };
            verify_exhaustive(&PointedSets::new(opts.deflations), &opts.axioms, &cfg)?
        }
        InstanceTag::Fgab => verify_sampled(&Fgab, &mut FgabGen::new(opts.seed), &opts.axioms, opts.samples),
    })
}

pub fn run_axioms(opts: &AxiomOptions, format: OutputFormat) -> Result<Output, CliError> {
    let report = axioms(opts)?;
    let mut out = String::new();
    let mode = match opts.instance {
        InstanceTag::PointedSets => format!("exhaustive, sizes <= {}, budget {}", opts.max_size, opts.budget),
        InstanceTag::Fgab => format!("sampled, {} samples, seed {}", opts.samples, opts.seed),
    };
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "instance {} ({mode})", opts.instance.name());
            out.push_str(&report.to_string());
        }
        OutputFormat::Machine => {
            let _ = writeln!(out, "instance {}", opts.instance.name());
            for r in &report.reports {
                let _ = writeln!(out, "verdict axiom-{} = {}", r.axiom, r.outcome.label());
                let _ = writeln!(out, "verdict axiom-{}-configurations = {}", r.axiom, r.checked);
                match &r.outcome {
                    Outcome::Pass => {}
                    Outcome::Fail { counterexample, .. } => {
                        let _ = writeln!(out, "verdict axiom-{}-counterexample = {counterexample}", r.axiom);
                    }
                    Outcome::Inconclusive { reason } => {
                        let _ = writeln!(out, "verdict axiom-{}-reason = {reason}", r.axiom);
                    }
                }
            }
        }
    }
    Ok(Output { text: out, code: if report.all_pass() { exit::OK } else { exit::FALSE } })
}

// ---------------------------------------------------------------- dispatch

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileCommand {
    Homology,
    Snake,
    Les,
    Verify,
}

fn dispatch<C: FileInstance>(cat: &C, file: &DiagramFile, which: FileCommand, format: OutputFormat) -> Result<Output, CliError> {
    match which {
        FileCommand::Homology => {
            let report = homology(cat, file)?;
            Ok(Output { text: render_homology(cat, &report, format), code: exit::OK })
        }
        FileCommand::Snake => run_snake(cat, file, format),
        FileCommand::Les => run_les(cat, file, format),
        FileCommand::Verify => run_verify(cat, file, format),
    }
}

/// Runs a file-based command; errors become their exit codes.
pub fn run_file(file: &DiagramFile, which: FileCommand, format: OutputFormat) -> Result<Output, CliError> {
    match file.instance {
        InstanceTag::Fgab => dispatch(&Fgab, file, which, format),
        InstanceTag::PointedSets => dispatch(&PointedSets::default(), file, which, format),
    }
}

/// `H_k` of an abelian group complex file, in the file's degree labels.
pub fn cmd_homology(path: &std::path::Path) -> Result<HomologyReport<FpAbelianGroup>, CliError> {
    let file = read_file(path)?;
    if file.instance != InstanceTag::Fgab {
        return Err(CliError::Input("homology reports need an fgab file".into()));
    }
    homology(&Fgab, &file)
}
