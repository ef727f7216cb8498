//! Surface language for theories.
//!
//! A theory file declares one bundle, then any number of metrics, parameters,
//! Lagrangians, vector fields and gauge generators:
//!
//! ```text
//! bundle { base: [t, x]; fields: [u]; }
//! param omega
//! lagrangian L = 1/2*(u_t^2 - u_x^2)
//! vfield X = d/dt + u*d/du
//! gauge R(chi) : u -> chi_t
//! ```
//!
//! Jets are written with subscript letters (`u_txx`) when base coordinates
//! have single-letter names, or in bracket form (`u[1,2]`) always. Rationals
//! only; decimal literals are rejected. [`print_theory`] emits a canonical
//! form whose parse is structurally equal to the original.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::Error;
use crate::jetspace::{BundleSpec, ProjectableVectorField};
use crate::symkernel::{Atom, ScalarExpr};
use crate::variational::GaugeGenerator;
use crate::Result;

/// Words that cannot be used as names: declaration keywords, function names,
/// and the direction marker.
pub const RESERVED: &[&str] = &[
    "bundle",
    "base",
    "fields",
    "metric",
    "param",
    "lagrangian",
    "vfield",
    "gauge",
    "sin",
    "cos",
    "exp",
    "d",
];

/// A constant symmetric rational matrix over the base, carried as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    name: String,
    entries: Vec<Vec<BigRational>>,
}

impl Metric {
    /// Validates shape (`n`-square) and symmetry.
    pub fn new(name: String, entries: Vec<Vec<BigRational>>, n: usize) -> Result<Self> {
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidBundle(format!(
                "{}x{} metric does not match base dimension {n}",
                entries.len(),
                entries.first().map_or(0, Vec::len)
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().skip(i + 1) {
                if *entry != entries[j][i] {
                    return Err(Error::InvalidBundle(format!(
                        "metric `{name}` is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Metric { name, entries })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }
}

/// A named gauge generator together with its declaration name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeBlock {
    pub name: String,
    pub generator: GaugeGenerator,
}

/// A parsed theory file: one bundle plus named declarations in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub(crate) bundle: Arc<BundleSpec>,
    pub(crate) metrics: Vec<Metric>,
    pub(crate) params: Vec<String>,
    pub(crate) lagrangians: Vec<(String, ScalarExpr)>,
    pub(crate) vfields: Vec<(String, ProjectableVectorField)>,
    pub(crate) gauges: Vec<GaugeBlock>,
}

fn check_name(registry: &mut BTreeSet<String>, name: &str) -> Result<()> {
    if RESERVED.contains(&name) {
        return Err(Error::InvalidBundle(format!("`{name}` is a reserved word")));
    }
    if !lexer::is_valid_ident(name) {
        return Err(Error::InvalidBundle(format!("invalid identifier `{name}`")));
    }
    if !registry.insert(name.to_string()) {
        return Err(Error::InvalidBundle(format!("`{name}` is already declared")));
    }
    Ok(())
}

fn check_params_declared(e: &ScalarExpr, params: &[String]) -> Result<()> {
    for atom in e.atoms() {
        if let Atom::Param(p) = atom {
            if !params.iter().any(|q| q == &p) {
                return Err(Error::UnknownName(format!("parameter `{p}` is not declared")));
            }
        }
    }
    Ok(())
}

impl Theory {
    /// Programmatic constructor enforcing the same invariants as the parser:
    /// fresh valid names throughout, declared parameters only, components on
    /// the right bundles.
    pub fn new(
        bundle: Arc<BundleSpec>,
        metrics: Vec<Metric>,
        params: Vec<String>,
        lagrangians: Vec<(String, ScalarExpr)>,
        vfields: Vec<(String, ProjectableVectorField)>,
        gauges: Vec<GaugeBlock>,
    ) -> Result<Self> {
        let mut registry = BTreeSet::new();
        for name in bundle.base_names().iter().chain(bundle.field_names().iter()) {
            check_name(&mut registry, name)?;
        }
        for m in &metrics {
            check_name(&mut registry, &m.name)?;
            Metric::new(m.name.clone(), m.entries.clone(), bundle.dim_base())?;
        }
        for p in &params {
            check_name(&mut registry, p)?;
        }
        for (name, l) in &lagrangians {
            check_name(&mut registry, name)?;
            if l.bundle() != &bundle {
                return Err(Error::incompatible(&bundle, l.bundle()));
            }
            check_params_declared(l, &params)?;
        }
        for (name, v) in &vfields {
            check_name(&mut registry, name)?;
            if v.bundle() != &bundle {
                return Err(Error::incompatible(&bundle, v.bundle()));
            }
            for c in v.xi().iter().chain(v.phi().iter()) {
                check_params_declared(c, &params)?;
            }
        }
        for g in &gauges {
            check_name(&mut registry, &g.name)?;
            if g.generator.matter_bundle() != &bundle {
                return Err(Error::incompatible(&bundle, g.generator.matter_bundle()));
            }
            for p in g.generator.parameter_names() {
                // Scoped to the block: fresh against globals, reusable across
                // blocks.
                let mut probe = registry.clone();
                check_name(&mut probe, p)?;
            }
            for c in g.generator.components() {
                check_params_declared(c, &params)?;
            }
        }
        Ok(Theory { bundle, metrics, params, lagrangians, vfields, gauges })
    }

    pub fn bundle(&self) -> &Arc<BundleSpec> {
        &self.bundle
    }

    pub fn metrics(&self) -> &[Metric] {
        &self.metrics
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn lagrangians(&self) -> &[(String, ScalarExpr)] {
        &self.lagrangians
    }

    pub fn vfields(&self) -> &[(String, ProjectableVectorField)] {
        &self.vfields
    }

    pub fn gauges(&self) -> &[GaugeBlock] {
        &self.gauges
    }

    /// The named Lagrangian, or the first one when `name` is `None`.
    pub fn lagrangian(&self, name: Option<&str>) -> Result<&ScalarExpr> {
        match name {
            Some(n) => self
                .lagrangians
                .iter()
                .find(|(name, _)| name == n)
                .map(|(_, l)| l)
                .ok_or_else(|| Error::UnknownName(format!("no Lagrangian named `{n}`"))),
            None => self
                .lagrangians
                .first()
                .map(|(_, l)| l)
                .ok_or_else(|| Error::UnknownName("the theory declares no Lagrangian".into())),
        }
    }

    /// The named vector field; with `None`, the sole one.
    pub fn vfield(&self, name: Option<&str>) -> Result<&ProjectableVectorField> {
        match name {
            Some(n) => self
                .vfields
                .iter()
                .find(|(name, _)| name == n)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::UnknownName(format!("no vector field named `{n}`"))),
            None => match self.vfields.as_slice() {
                [(_, v)] => Ok(v),
                [] => Err(Error::UnknownName("the theory declares no vector field".into())),
                _ => Err(Error::UnknownName(
                    "several vector fields declared; select one with --vfield".into(),
                )),
            },
        }
    }

    /// The named gauge block; with `None`, the sole one.
    pub fn gauge(&self, name: Option<&str>) -> Result<&GaugeBlock> {
        match name {
            Some(n) => self
                .gauges
                .iter()
                .find(|g| g.name == n)
                .ok_or_else(|| Error::UnknownName(format!("no gauge generator named `{n}`"))),
            None => match self.gauges.as_slice() {
                [g] => Ok(g),
                [] => Err(Error::UnknownName("the theory declares no gauge generator".into())),
                _ => Err(Error::UnknownName(
                    "several gauge generators declared; select one with --gauge".into(),
                )),
            },
        }
    }

    /// Declared-name set for rendering expressions of this theory.
    pub fn declared_names(&self) -> BTreeSet<String> {
        let mut names = crate::symkernel::display::bundle_names(&self.bundle);
        names.extend(self.params.iter().cloned());
        names
    }
}

/// Parse a theory file.
pub fn parse_theory(src: &str) -> Result<Theory> {
    parser::Parser::new(src)?.theory()
}

/// Parse raw bytes: invalid UTF-8 is a structured error at the offending
/// position rather than a panic.
pub fn parse_theory_bytes(bytes: &[u8]) -> Result<Theory> {
    match std::str::from_utf8(bytes) {
        Ok(src) => parse_theory(src),
        Err(e) => {
            let prefix = &bytes[..e.valid_up_to()];
            let text = std::str::from_utf8(prefix).expect("valid prefix");
            let line = text.bytes().filter(|&b| b == b'\n').count() + 1;
            let col = text.len() - text.rfind('\n').map_or(0, |p| p + 1) + 1;
            Err(Error::Parse { line, col, msg: "input is not valid UTF-8".into() })
        }
    }
}

/// Canonical text form; `parse_theory(print_theory(t))` is structurally `t`.
pub fn print_theory(theory: &Theory) -> String {
    printer::print(theory)
}
