//! Text and LaTeX renderers for scalar expressions.
//!
//! The text form is designed to round-trip through the surface-language
//! parser: jets render as `u_tx` when every base coordinate has a
//! single-letter name and the subscripted word does not collide with another
//! declared name, and as `u[1,1]` otherwise.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::jetspace::{BundleSpec, MultiIndex};

use super::atom::Atom;
use super::expr::{Factor, Monomial, ScalarExpr};

/// Names that the parser would treat as declared identifiers: everything a
/// jet subscript word must not collide with.
pub fn bundle_names(bundle: &BundleSpec) -> BTreeSet<String> {
    bundle.base_names().iter().chain(bundle.field_names().iter()).cloned().collect()
}

fn single_letter_base(bundle: &BundleSpec) -> bool {
    bundle
        .base_names()
        .iter()
        .all(|n| n.len() == 1 && n.chars().next().unwrap().is_ascii_alphabetic())
}

fn subscript_letters(bundle: &BundleSpec, mi: &MultiIndex) -> String {
    let mut s = String::new();
    for (sigma, &k) in mi.entries().iter().enumerate() {
        for _ in 0..k {
            s.push_str(bundle.base_name(sigma));
        }
    }
    s
}

/// Render a jet atom for the text form.
pub fn jet_text(
    bundle: &BundleSpec,
    field: usize,
    mi: &MultiIndex,
    declared: &BTreeSet<String>,
) -> String {
    let name = bundle.field_name(field);
    if mi.order() == 0 {
        return name.to_string();
    }
    if single_letter_base(bundle) {
        let word = format!("{}_{}", name, subscript_letters(bundle, mi));
        if !declared.contains(&word) {
            return word;
        }
    }
    let entries: Vec<String> = mi.entries().iter().map(|k| k.to_string()).collect();
    format!("{}[{}]", name, entries.join(","))
}

fn jet_latex(bundle: &BundleSpec, field: usize, mi: &MultiIndex) -> String {
    let name = bundle.field_name(field);
    if mi.order() == 0 {
        return name.to_string();
    }
    if single_letter_base(bundle) {
        return format!("{}_{{{}}}", name, subscript_letters(bundle, mi));
    }
    let entries: Vec<String> = mi.entries().iter().map(|k| k.to_string()).collect();
    format!("{}_{{({})}}", name, entries.join(","))
}

fn q_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn q_latex(q: &BigRational) -> String {
    let (sign, mag) = if q.is_negative() { ("-", -q.clone()) } else { ("", q.clone()) };
    if mag.denom().is_one() {
        format!("{sign}{}", mag.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

fn factor_text(bundle: &BundleSpec, factor: &Factor, declared: &BTreeSet<String>) -> String {
    match factor {
        Factor::Atom(Atom::Base(s)) => bundle.base_name(*s).to_string(),
        Factor::Atom(Atom::Jet { field, mi }) => jet_text(bundle, *field, mi, declared),
        Factor::Atom(Atom::Param(p)) => p.clone(),
        Factor::Apply(f, arg) => format!("{}({})", f.name(), render_text(arg, declared)),
    }
}

fn factor_latex(bundle: &BundleSpec, factor: &Factor, declared: &BTreeSet<String>) -> String {
    match factor {
        Factor::Atom(Atom::Base(s)) => bundle.base_name(*s).to_string(),
        Factor::Atom(Atom::Jet { field, mi }) => jet_latex(bundle, *field, mi),
        Factor::Atom(Atom::Param(p)) => p.clone(),
        Factor::Apply(f, arg) => {
            format!("\\{}\\left({}\\right)", f.name(), render_latex(arg, declared))
        }
    }
}

fn term_text(bundle: &BundleSpec, term: &Monomial, declared: &BTreeSet<String>) -> String {
    let mag = term.coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    if term.factors.is_empty() || !mag.is_one() {
        parts.push(q_text(&mag));
    }
    for (factor, exp) in &term.factors {
        let base = factor_text(bundle, factor, declared);
        if *exp == 1 {
            parts.push(base);
        } else {
            parts.push(format!("{base}^{exp}"));
        }
    }
    parts.join("*")
}

fn term_latex(bundle: &BundleSpec, term: &Monomial, declared: &BTreeSet<String>) -> String {
    let mag = term.coeff.abs();
    let mut out = String::new();
    if term.factors.is_empty() || !mag.is_one() {
        out.push_str(&q_latex(&mag));
    }
    let mut first = true;
    for (factor, exp) in &term.factors {
        if !first {
            out.push(' ');
        }
        first = false;
        let base = factor_latex(bundle, factor, declared);
        if *exp == 1 {
            out.push_str(&base);
        } else {
            out.push_str(&format!("{base}^{{{exp}}}"));
        }
    }
    out
}

/// Text rendering with an explicit declared-name set (used by the surface
/// language printer, where parameters are also declared).
pub fn render_text(expr: &ScalarExpr, declared: &BTreeSet<String>) -> String {
    if expr.is_zero() {
        return "0".to_string();
    }
    let bundle = expr.bundle();
    let mut out = String::new();
    for (i, term) in expr.terms().iter().enumerate() {
        let negative = term.coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        out.push_str(&term_text(bundle, term, declared));
    }
    out
}

/// LaTeX rendering.
pub fn render_latex(expr: &ScalarExpr, declared: &BTreeSet<String>) -> String {
    if expr.is_zero() {
        return "0".to_string();
    }
    let bundle = expr.bundle();
    let mut out = String::new();
    for (i, term) in expr.terms().iter().enumerate() {
        let negative = term.coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        out.push_str(&term_latex(bundle, term, declared));
    }
    out
}

/// Text rendering against the bundle's own names (no theory-level params).
pub fn text_expr(expr: &ScalarExpr) -> String {
    render_text(expr, &bundle_names(expr.bundle()))
}

/// Convenience wrapper matching [`text_expr`].
pub fn latex_expr(expr: &ScalarExpr) -> String {
    render_latex(expr, &bundle_names(expr.bundle()))
}
