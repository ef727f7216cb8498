//! Canonical text form of a theory. Parsing the output reproduces the theory
//! structurally, which is the round-trip contract the fuzz tests exercise.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::symkernel::display::{bundle_names, render_text};
use crate::symkernel::ScalarExpr;

use super::Theory;

fn q_text(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Declared-name set for expression rendering: everything single-word
/// resolution would catch, so jet subscripts never collide.
fn declared(theory: &Theory, bundle: &crate::jetspace::BundleSpec) -> BTreeSet<String> {
    let mut names = bundle_names(bundle);
    names.extend(theory.params.iter().cloned());
    names
}

/// One directional segment of a vector field: sign flag plus rendered text.
fn vsegment(coeff: &ScalarExpr, dir: &str, declared: &BTreeSet<String>) -> (bool, String) {
    if let Some(q) = coeff.as_constant() {
        let neg = q.is_negative();
        let mag = q.abs();
        if mag.is_one() {
            return (neg, format!("d/d{dir}"));
        }
        return (neg, format!("{}*d/d{dir}", q_text(&mag)));
    }
    if coeff.terms().len() == 1 {
        let neg = coeff.terms()[0].coeff.is_negative();
        let mag = if neg { -coeff.clone() } else { coeff.clone() };
        return (neg, format!("{}*d/d{dir}", render_text(&mag, declared)));
    }
    (false, format!("({})*d/d{dir}", render_text(coeff, declared)))
}

pub(super) fn print(theory: &Theory) -> String {
    let bundle = &theory.bundle;
    let names = declared(theory, bundle);
    let mut out = String::new();

    out.push_str(&format!(
        "bundle {{ base: [{}]; fields: [{}]; }}\n",
        bundle.base_names().join(", "),
        bundle.field_names().join(", ")
    ));
    for m in &theory.metrics {
        let rows: Vec<String> = m
            .entries()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(q_text).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        out.push_str(&format!("metric {} = [{}]\n", m.name(), rows.join(", ")));
    }
    for p in &theory.params {
        out.push_str(&format!("param {p}\n"));
    }
    for (name, l) in &theory.lagrangians {
        out.push_str(&format!("lagrangian {name} = {}\n", render_text(l, &names)));
    }
    for (name, v) in &theory.vfields {
        let mut segments: Vec<(bool, String)> = Vec::new();
        for (sigma, c) in v.xi().iter().enumerate() {
            if !c.is_zero() {
                segments.push(vsegment(c, bundle.base_name(sigma), &names));
            }
        }
        for (i, c) in v.phi().iter().enumerate() {
            if !c.is_zero() {
                segments.push(vsegment(c, bundle.field_name(i), &names));
            }
        }
        let body = if segments.is_empty() {
            // A zero field still needs a parseable term.
            format!("0*d/d{}", bundle.base_name(0))
        } else {
            let mut s = String::new();
            for (k, (neg, text)) in segments.iter().enumerate() {
                if k == 0 {
                    if *neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if *neg { " - " } else { " + " });
                }
                s.push_str(text);
            }
            s
        };
        out.push_str(&format!("vfield {name} = {body}\n"));
    }
    for g in &theory.gauges {
        let ext = g.generator.extended_bundle();
        let mut ext_names = bundle_names(ext);
        ext_names.extend(theory.params.iter().cloned());
        let mappings: Vec<String> = g
            .generator
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{} -> {}", bundle.field_name(i), render_text(c, &ext_names)))
            .collect();
        out.push_str(&format!(
            "gauge {}({}) : {}\n",
            g.name,
            g.generator.parameter_names().join(", "),
            mappings.join(", ")
        ));
    }
    out
}
