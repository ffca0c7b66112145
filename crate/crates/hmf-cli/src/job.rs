//! Job specification: command-line arguments and their resolution into a
//! field, an algebra and a level.

use crate::CliError;
use clap::{Args, ValueEnum};
use hmf_core::numfield::{FieldDesc, ZFIdeal};
use hmf_core::quatalg::{find_definite_algebra, QuatAlgebra};
use num_bigint::BigInt;
use std::path::PathBuf;

/// Height bound for the algebra search by discriminant.
pub const ALGEBRA_SEARCH_HEIGHT: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Brandt,
    P1,
    Both,
}

impl BackendChoice {
    pub fn name(self) -> &'static str {
        match self {
            BackendChoice::Brandt => "brandt",
            BackendChoice::P1 => "p1",
            BackendChoice::Both => "both",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct JobSpec {
    /// Defining polynomial of the totally real field in x
    #[arg(long, default_value = "x^2-x-1")]
    pub field: String,
    /// Structure constant a of (a, b | F), an expression in w
    #[arg(long, requires = "b", conflicts_with = "disc")]
    pub a: Option<String>,
    /// Structure constant b of (a, b | F)
    #[arg(long, requires = "a")]
    pub b: Option<String>,
    /// Discriminant of the definite algebra: a generator expression in w
    #[arg(long)]
    pub disc: Option<String>,
    /// Level: generator expression, "(p,k)" for the k-th prime above p, or "hnf:a,b;c,d"
    #[arg(long, default_value = "1")]
    pub level: String,
    #[arg(long, value_enum, default_value_t = BackendChoice::Brandt)]
    pub backend: BackendChoice,
    /// Largest prime norm for Hecke operators
    #[arg(long, default_value_t = 30)]
    pub primes_norm_max: u64,
    /// Number of theta coefficients after the constant term
    #[arg(long, default_value_t = 10)]
    pub terms: usize,
    /// Seed for the random operator combinations used in decomposition
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Directory for cached precomputations
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Recompute everything and write nothing to the cache
    #[arg(long)]
    pub no_cache: bool,
}

impl JobSpec {
    /// Command-line flags reproducing this job (output and cache flags excluded).
    pub fn to_args(&self) -> Vec<String> {
        let mut v = vec!["--field".to_string(), self.field.clone()];
        match (&self.a, &self.b) {
            (Some(a), Some(b)) => v.extend(["--a".into(), a.clone(), "--b".into(), b.clone()]),
            _ => v.extend(["--disc".into(), self.disc.clone().unwrap_or_else(|| "1".into())]),
        }
        v.extend([
            "--level".into(),
            self.level.clone(),
            "--backend".into(),
            self.backend.name().into(),
            "--primes-norm-max".into(),
            self.primes_norm_max.to_string(),
            "--terms".into(),
            self.terms.to_string(),
            "--seed".into(),
            self.seed.to_string(),
        ]);
        v
    }

    pub fn resolve_field(&self) -> Result<FieldDesc, CliError> {
        Ok(FieldDesc::parse(&self.field)?)
    }

    pub fn resolve_algebra(&self, f: &FieldDesc) -> Result<QuatAlgebra, CliError> {
        if let (Some(a), Some(b)) = (&self.a, &self.b) {
            let alg = QuatAlgebra::new(f, &f.parse_elem(a)?, &f.parse_elem(b)?)?;
            if !alg.is_definite() {
                return Err(CliError::validation("DefinitenessRequired", "algebra is not totally definite".into()));
            }
            return Ok(alg);
        }
        let d = f.principal_ideal(&f.parse_elem(self.disc.as_deref().unwrap_or("1"))?);
        Ok(find_definite_algebra(f, &d, ALGEBRA_SEARCH_HEIGHT)?)
    }

    pub fn resolve_level(&self, f: &FieldDesc) -> Result<ZFIdeal, CliError> {
        parse_level(f, &self.level)
    }
}

fn bad_level(s: &str, why: &str) -> CliError {
    CliError::validation("BadLevel", format!("cannot resolve level {s:?}: {why}"))
}

pub fn parse_level(f: &FieldDesc, s: &str) -> Result<ZFIdeal, CliError> {
    let t = s.trim();
    if let Some(body) = t.strip_prefix("hnf:") {
        let rows: Vec<Vec<BigInt>> = body
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse::<BigInt>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad_level(s, "entries must be integers"))?;
        if rows.len() != f.degree() || rows.iter().any(|r| r.len() != f.degree()) {
            return Err(bad_level(s, "HNF must be square of the field degree"));
        }
        let gens: Vec<_> = rows.iter().map(|r| f.from_int_vec(r)).collect();
        let id = f.ideal_from_gens(&gens);
        if id.hnf() != rows.as_slice() {
            return Err(bad_level(s, "rows are not the HNF of an ideal"));
        }
        return Ok(id);
    }
    if let Some(body) = t.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        if let Some((p, k)) = body.split_once(',') {
            let p: u64 = p.trim().parse().map_err(|_| bad_level(s, "p must be a positive integer"))?;
            let k: usize = k.trim().parse().map_err(|_| bad_level(s, "k must be a non-negative integer"))?;
            if !hmf_core::arith::int::is_prime(p) {
                return Err(bad_level(s, "p is not prime"));
            }
            let primes = f.factor_rational_prime(p);
            return primes.get(k).map(|pr| pr.ideal.clone()).ok_or_else(|| bad_level(s, "no such prime"));
        }
    }
    let g = f.parse_elem(t)?;
    if g.is_zero() {
        return Err(bad_level(s, "the zero ideal is not a level"));
    }
    if !g.is_integral() {
        return Err(bad_level(s, "generator is not integral"));
    }
    Ok(f.principal_ideal(&g))
}
