//! Command-line front end for hmf-core: validation reports, class sets,
//! Hecke matrices, eigenvalue tables and theta series as TOML records.

pub mod cache;
pub mod job;

use cache::{Cache, Lookup};
use clap::{Parser, Subcommand};
use hmf_core::arith::hnf::QLattice;
use hmf_core::arith::poly;
use hmf_core::classes::{right_class_set, theta_series, ClassSet};
use hmf_core::diag::{Diagnose, ErrorKind};
use hmf_core::heckelin::int_matrix;
use hmf_core::numfield::{FieldDesc, FieldElem, PrimeIdeal, ZFIdeal};
use hmf_core::orders::{eichler_order, maximal_order, QuatOrder, RightIdeal};
use hmf_core::p1hecke::maximal_class_reps;
use hmf_core::quatalg::QuatAlgebra;
use hmf_core::space::{Backend, HeckeSpace};
use job::{BackendChoice, JobSpec};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = concat!("hmf ", env!("CARGO_PKG_VERSION"));
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "hmf", version, about = "Hilbert modular forms via definite quaternion algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the field and report its invariants
    Field(JobSpec),
    /// Report the definite algebra (given by a, b or found by discriminant)
    Algebra(JobSpec),
    /// Right ideal classes of the Eichler order of the level
    Classes(JobSpec),
    /// Hecke matrices T(p) for good primes up to the norm bound
    Brandt(JobSpec),
    /// Hecke constituents of the cusp space and their eigenvalues
    Eigensystem(JobSpec),
    /// Theta series of the class representatives
    Theta(JobSpec),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{message}")]
    Core { code: &'static str, kind: ErrorKind, message: String },
    #[error("backends disagree at {0}")]
    BackendMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Toml(#[from] toml::ser::Error),
}

impl CliError {
    pub fn validation(code: &'static str, message: String) -> Self {
        CliError::Core { code, kind: ErrorKind::Validation, message }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core { code, .. } => code,
            CliError::BackendMismatch(_) => "BackendMismatch",
            CliError::Io(_) => "Io",
            CliError::Toml(_) => "Serialize",
        }
    }

    /// 2 for rejected input, 3 for resource caps, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { kind: ErrorKind::Validation, .. } => 2,
            CliError::Core { kind: ErrorKind::ResourceCap, .. } => 3,
            _ => 1,
        }
    }
}

macro_rules! core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core { code: e.code(), kind: e.kind(), message: e.to_string() }
            }
        }
    )*};
}

core_error!(
    hmf_core::numfield::NumFieldError,
    hmf_core::quatalg::QuatError,
    hmf_core::orders::OrderError,
    hmf_core::classes::ClassError,
    hmf_core::p1hecke::P1Error,
    hmf_core::space::SpaceError
);

/// A diagnostic line on standard error.
fn note(msg: &str) {
    eprintln!("hmf: {msg}");
}

/// Serialized form of a class set: enough to rebuild it without a search.
#[derive(Serialize, Deserialize)]
struct ClassRecord {
    order: QLattice,
    p0: PrimeIdeal,
    reps: Vec<QLattice>,
}

/// Field, algebra and cache for one job.
pub struct Context {
    pub spec: JobSpec,
    pub field: FieldDesc,
    pub alg: QuatAlgebra,
    cache: Cache,
    pub cache_keys: Vec<String>,
    pub cache_hits: Vec<String>,
}

fn hnf_text(id: &ZFIdeal) -> Vec<Vec<String>> {
    id.hnf().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn elem_text(x: &FieldElem) -> String {
    x.format("w")
}

impl Context {
    pub fn new(spec: &JobSpec) -> Result<Self, CliError> {
        let field = spec.resolve_field()?;
        let alg = spec.resolve_algebra(&field)?;
        let cache = if spec.no_cache { Cache::disabled() } else { Cache::new(spec.cache_dir.clone()) };
        Ok(Context { spec: spec.clone(), field, alg, cache, cache_keys: Vec::new(), cache_hits: Vec::new() })
    }

    fn algebra_material(&self) -> String {
        format!("{}|{}|{}", self.field.poly_string(), elem_text(self.alg.a()), elem_text(self.alg.b()))
    }

    fn lookup<T: for<'de> Deserialize<'de>>(&mut self, kind: &str, key: &str) -> Option<T> {
        let tag = format!("{kind}-{key}");
        if !self.cache_keys.contains(&tag) {
            self.cache_keys.push(tag);
        }
        match self.cache.load(kind, key) {
            Lookup::Hit(v) => {
                note(&format!("info cache-hit kind={kind} key={key}"));
                self.cache_hits.push(kind.to_string());
                Some(v)
            }
            Lookup::Miss => None,
            Lookup::Corrupt => {
                note(&format!("warning code=CacheCorrupt kind={kind} key={key}: recomputing"));
                None
            }
        }
    }

    fn save<T: Serialize>(&self, kind: &str, key: &str, v: &T) {
        if let Err(e) = self.cache.store(kind, key, v) {
            note(&format!("warning code=CacheWrite kind={kind}: {e}"));
        }
    }

    pub fn maximal_order(&mut self) -> Result<QuatOrder, CliError> {
        let key = Cache::key("order", &self.algebra_material());
        if let Some(lat) = self.lookup::<QLattice>("order", &key) {
            if let Ok(o) = QuatOrder::new(&self.alg, lat) {
                if o.red_disc() == self.alg.disc() {
                    return Ok(o);
                }
            }
            note("warning code=CacheCorrupt kind=order: record is not a maximal order");
        }
        let o = maximal_order(&self.alg)?;
        self.save("order", &key, o.lattice());
        Ok(o)
    }

    fn rebuild(&self, o: &QuatOrder, rec: ClassRecord) -> Option<ClassSet> {
        if rec.order != *o.lattice() {
            return None;
        }
        let reps =
            rec.reps.into_iter().map(|l| RightIdeal::new(&self.alg, l, o)).collect::<Result<Vec<_>, _>>().ok()?;
        ClassSet::from_reps(&self.alg, o, reps, rec.p0).ok()
    }

    fn class_set_cached(
        &mut self,
        kind: &str,
        o: &QuatOrder,
        material: String,
        compute: impl FnOnce() -> Result<ClassSet, CliError>,
    ) -> Result<ClassSet, CliError> {
        let key = Cache::key(kind, &format!("{}|{material}", self.algebra_material()));
        if let Some(rec) = self.lookup::<ClassRecord>(kind, &key) {
            if let Some(cs) = self.rebuild(o, rec) {
                return Ok(cs);
            }
            note(&format!("warning code=CacheCorrupt kind={kind}: record does not rebuild"));
        }
        let cs = compute()?;
        let rec = ClassRecord {
            order: cs.order.lattice().clone(),
            p0: cs.p0.clone(),
            reps: cs.reps.iter().map(|r| r.lattice().clone()).collect(),
        };
        self.save(kind, &key, &rec);
        Ok(cs)
    }

    /// Maximal class set whose representative norms avoid the level; reused
    /// across levels sharing the same auxiliary prime.
    pub fn maximal_classes(&mut self, omax: &QuatOrder, level: &ZFIdeal) -> Result<ClassSet, CliError> {
        let f = self.field.clone();
        let p0 = hmf_core::classes::auxiliary_prime(&self.alg, &f.ideal_mul(omax.red_disc(), level), 0);
        let material = format!("{:?}|{:?}", omax.lattice(), p0.ideal.hnf());
        let alg = self.alg.clone();
        self.class_set_cached("classes", omax, material, || Ok(maximal_class_reps(&alg, omax, level)?))
    }

    pub fn eichler_classes(&mut self, omax: &QuatOrder, level: &ZFIdeal) -> Result<ClassSet, CliError> {
        let eo = eichler_order(&self.alg, omax, level)?;
        let material = format!("{:?}", eo.lattice());
        let alg = self.alg.clone();
        let unit = self.field.unit_ideal();
        let eo2 = eo.clone();
        self.class_set_cached("eichler", &eo, material, move || Ok(right_class_set(&alg, &eo2, &unit, 0)?))
    }

    pub fn space(&mut self, backend: Backend, level: &ZFIdeal) -> Result<HeckeSpace, CliError> {
        if !self.field.coprime(level, self.alg.disc()) {
            return Err(hmf_core::space::SpaceError::LevelNotCoprime.into());
        }
        let omax = self.maximal_order()?;
        Ok(match backend {
            Backend::Brandt => {
                let cs = self.eichler_classes(&omax, level)?;
                HeckeSpace::from_eichler_classes(&self.alg, cs, level)
            }
            Backend::P1 => {
                let cs = self.maximal_classes(&omax, level)?;
                HeckeSpace::from_maximal_classes(&self.alg, cs, level)?
            }
        })
    }

    fn metadata(&self, command: &str, level: Option<&ZFIdeal>) -> Metadata {
        let mut args = vec![command.to_string()];
        args.extend(self.spec.to_args());
        Metadata {
            format_version: FORMAT_VERSION,
            tool: TOOL.into(),
            command: args.iter().map(|a| shell_quote(a)).collect::<Vec<_>>().join(" "),
            field: self.field.poly_string(),
            algebra_a: elem_text(self.alg.a()),
            algebra_b: elem_text(self.alg.b()),
            disc_norm: self.alg.disc().norm().to_string(),
            disc_hnf: hnf_text(self.alg.disc()),
            level: self.spec.level.clone(),
            level_norm: level.map(|l| l.norm().to_string()).unwrap_or_default(),
            level_hnf: level.map(hnf_text).unwrap_or_default(),
            backend: self.spec.backend.name().into(),
            primes_norm_max: self.spec.primes_norm_max,
            seed: self.spec.seed,
            cache_version: cache::CACHE_VERSION,
            cache_keys: self.cache_keys.clone(),
        }
    }
}

fn shell_quote(s: &str) -> String {
    if s.chars().all(|c| c.is_ascii_alphanumeric() || "-_.=/^+*".contains(c)) && !s.is_empty() {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', "'\\''"))
    }
}

#[derive(Serialize)]
pub struct Metadata {
    pub format_version: u32,
    pub tool: String,
    pub command: String,
    pub field: String,
    pub algebra_a: String,
    pub algebra_b: String,
    pub disc_norm: String,
    pub disc_hnf: Vec<Vec<String>>,
    pub level: String,
    pub level_norm: String,
    pub level_hnf: Vec<Vec<String>>,
    pub backend: String,
    pub primes_norm_max: u64,
    pub seed: u64,
    pub cache_version: u32,
    pub cache_keys: Vec<String>,
}

#[derive(Serialize)]
struct FieldReport {
    polynomial: String,
    degree: usize,
    discriminant: String,
    totally_real: bool,
    class_number_one: bool,
    strict_class_number_one: bool,
    fundamental_units: Vec<String>,
    unit_signs: Vec<Vec<i8>>,
}

#[derive(Serialize)]
struct AlgebraReport {
    field: String,
    a: String,
    b: String,
    definite: bool,
    disc_norm: String,
    disc_hnf: Vec<Vec<String>>,
    ramified_primes: Vec<String>,
}

#[derive(Serialize)]
struct ClassesReport {
    class_number: usize,
    e: Vec<usize>,
    metadata: Metadata,
}

#[derive(Serialize)]
struct PrimeLabel {
    norm: String,
    index: usize,
    generator: String,
}

fn prime_label(p: &PrimeIdeal) -> PrimeLabel {
    PrimeLabel { norm: p.norm().to_string(), index: p.index, generator: elem_text(p.gen()) }
}

#[derive(Serialize)]
struct HeckeOut {
    prime: PrimeLabel,
    charpoly: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct BrandtReport {
    dimension: usize,
    weights: Vec<usize>,
    metadata: Metadata,
    operators: Vec<HeckeOut>,
}

#[derive(Serialize)]
struct EigenRow {
    value: Vec<String>,
    value_text: String,
    prime: PrimeLabel,
}

#[derive(Serialize)]
struct ConstituentOut {
    dim: usize,
    multiplicity: usize,
    hecke_poly: Vec<String>,
    hecke_poly_text: String,
    eigenvalues: Vec<EigenRow>,
}

/// The stable eigensystem output.
#[derive(Serialize)]
struct ResultTable {
    ambient_dimension: usize,
    cusp_dimension: usize,
    metadata: Metadata,
    constituents: Vec<ConstituentOut>,
}

#[derive(Serialize)]
struct ThetaClass {
    class: usize,
    e: usize,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct ThetaReport {
    normalization: String,
    metadata: Metadata,
    classes: Vec<ThetaClass>,
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn backends(choice: BackendChoice) -> Vec<Backend> {
    match choice {
        BackendChoice::Brandt => vec![Backend::Brandt],
        BackendChoice::P1 => vec![Backend::P1],
        BackendChoice::Both => vec![Backend::Brandt, Backend::P1],
    }
}

/// Spaces for the requested backends; with both, the characteristic
/// polynomials of every T(p) must agree.
fn spaces(ctx: &mut Context, level: &ZFIdeal, primes_bound: u64) -> Result<HeckeSpace, CliError> {
    let mut out: Vec<HeckeSpace> = Vec::new();
    for b in backends(ctx.spec.backend) {
        out.push(ctx.space(b, level)?);
    }
    if out.len() == 2 {
        if out[0].dim() != out[1].dim() {
            return Err(CliError::BackendMismatch("dimension".into()));
        }
        for p in out[0].good_primes(primes_bound) {
            let a = poly_of(&out[0].hecke_matrix(&p)?);
            let b = poly_of(&out[1].hecke_matrix(&p)?);
            if a != b {
                return Err(CliError::BackendMismatch(p.label()));
            }
        }
        note("info backends-agree");
    }
    Ok(out.swap_remove(0))
}

fn poly_of(m: &[Vec<i64>]) -> Vec<hmf_core::arith::Q> {
    hmf_core::arith::qmat::charpoly(&int_matrix(m))
}

fn render<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(toml::to_string(v)?)
}

/// Run a command; returns the TOML text that was written.
pub fn run(cmd: &Command) -> Result<String, CliError> {
    let (name, spec) = match cmd {
        Command::Field(s) => ("field", s),
        Command::Algebra(s) => ("algebra", s),
        Command::Classes(s) => ("classes", s),
        Command::Brandt(s) => ("brandt", s),
        Command::Eigensystem(s) => ("eigensystem", s),
        Command::Theta(s) => ("theta", s),
    };
    let text = match name {
        "field" => {
            let f = spec.resolve_field()?;
            render(&FieldReport {
                polynomial: f.poly_string(),
                degree: f.degree(),
                discriminant: f.disc().to_string(),
                totally_real: true,
                class_number_one: true,
                strict_class_number_one: true,
                fundamental_units: f.fund_units().iter().map(elem_text).collect(),
                unit_signs: f.fund_units().iter().map(|u| f.signs(u)).collect(),
            })?
        }
        "algebra" => {
            let f = spec.resolve_field()?;
            let alg = spec.resolve_algebra(&f)?;
            render(&AlgebraReport {
                field: f.poly_string(),
                a: elem_text(alg.a()),
                b: elem_text(alg.b()),
                definite: alg.is_definite(),
                disc_norm: alg.disc().norm().to_string(),
                disc_hnf: hnf_text(alg.disc()),
                ramified_primes: alg.ramified_finite().iter().map(|p| p.label()).collect(),
            })?
        }
        _ => {
            let mut ctx = Context::new(spec)?;
            let level = spec.resolve_level(&ctx.field)?;
            let sp = spaces(&mut ctx, &level, spec.primes_norm_max)?;
            let meta = ctx.metadata(name, Some(&level));
            match name {
                "classes" => render(&ClassesReport { class_number: sp.dim(), e: sp.weights(), metadata: meta })?,
                "brandt" => {
                    let mut operators = Vec::new();
                    for p in sp.good_primes(spec.primes_norm_max) {
                        let m = sp.hecke_matrix(&p)?;
                        operators.push(HeckeOut { prime: prime_label(&p), charpoly: strings(&poly_of(&m)), matrix: m });
                    }
                    render(&BrandtReport { dimension: sp.dim(), weights: sp.weights(), metadata: meta, operators })?
                }
                "eigensystem" => {
                    let primes = sp.good_primes(spec.primes_norm_max);
                    let cons = sp.constituents(&primes, spec.seed)?;
                    let constituents = cons
                        .iter()
                        .map(|c| ConstituentOut {
                            dim: c.dim,
                            multiplicity: c.multiplicity,
                            hecke_poly: strings(c.hecke_poly()),
                            hecke_poly_text: poly::to_string_var(c.hecke_poly(), "t"),
                            eigenvalues: c
                                .primes
                                .iter()
                                .zip(&c.eigenvalues)
                                .map(|(p, a)| EigenRow {
                                    value: strings(a),
                                    value_text: c.field.format(a, "t"),
                                    prime: prime_label(p),
                                })
                                .collect(),
                        })
                        .collect();
                    render(&ResultTable {
                        ambient_dimension: sp.dim(),
                        cusp_dimension: sp.cusp_dim(),
                        metadata: meta,
                        constituents,
                    })?
                }
                _ => {
                    let cs = sp.class_set();
                    let mut classes = Vec::new();
                    for (k, r) in cs.reps.iter().enumerate() {
                        let c = theta_series(&ctx.alg, r.lattice(), r.q(), spec.terms)?;
                        classes.push(ThetaClass { class: k, e: cs.e[k], coefficients: strings(&c) });
                    }
                    let normalization = "c_k = #{x in I : 2 nrd(x)/q = k}".to_string();
                    render(&ThetaReport { normalization, metadata: meta, classes })?
                }
            }
        }
    };
    if let Some(path) = &spec.output {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, &text)?;
        std::fs::rename(&tmp, path)?;
    }
    Ok(text)
}

/// Entry point shared by the binary and tests: runs and returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    let to_stdout = match &cli.command {
        Command::Field(s)
        | Command::Algebra(s)
        | Command::Classes(s)
        | Command::Brandt(s)
        | Command::Eigensystem(s)
        | Command::Theta(s) => s.output.is_none(),
    };
    match run(&cli.command) {
        Ok(text) => {
            if to_stdout {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            note(&format!("error code={} exit={}: {e}", e.code(), e.exit_code()));
            e.exit_code()
        }
    }
}
