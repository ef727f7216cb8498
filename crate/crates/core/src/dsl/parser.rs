//! Recursive-descent parser for theory files. Never panics: every failure is
//! a structured [`Error::Parse`] with a 1-based position.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::jetspace::{BundleSpec, MultiIndex, ProjectableVectorField};
use crate::symkernel::{Func, ScalarExpr};
use crate::variational::GaugeGenerator;
use crate::Result;

use super::lexer::{lex, Tok, Token};
use super::{GaugeBlock, Metric, Theory, RESERVED};

/// Parenthesis/function nesting cap; beyond it the input is rejected instead
/// of risking stack exhaustion.
const MAX_DEPTH: usize = 256;
/// Cap on exponents and bracketed derivative orders; larger values would only
/// serve to exhaust memory during expansion.
const MAX_EXPONENT: u32 = 4096;

pub(super) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

struct Scope<'a> {
    bundle: &'a Arc<BundleSpec>,
    params: &'a [String],
}

impl Parser {
    pub(super) fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn err_at<T>(&self, line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == &tok {
            self.advance();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok((s, line, col))
            }
            other => self.err(format!("expected {what}, found {}", other.describe())),
        }
    }

    fn nat_u32(&mut self, what: &str, cap: u32) -> Result<u32> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Nat(s) => {
                self.advance();
                match s.parse::<u64>() {
                    Ok(v) if v <= u64::from(cap) => Ok(v as u32),
                    _ => self.err_at(line, col, format!("{what} exceeds the limit {cap}")),
                }
            }
            other => self.err(format!("expected {what}, found {}", other.describe())),
        }
    }

    fn big_nat(&mut self, what: &str) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Nat(s) => {
                self.advance();
                // A digit string always parses.
                Ok(s.parse::<BigInt>().expect("digits"))
            }
            other => self.err(format!("expected {what}, found {}", other.describe())),
        }
    }

    /// `[-] p [/ q]` with exact rational value.
    fn signed_rational(&mut self) -> Result<BigRational> {
        let negative = self.eat(&Tok::Minus);
        let p = self.big_nat("a number")?;
        let q = if self.eat(&Tok::Slash) {
            let (line, col) = self.here();
            let q = self.big_nat("a denominator")?;
            if q.is_zero() {
                return self.err_at(line, col, "zero denominator");
            }
            q
        } else {
            BigInt::from(1)
        };
        let mut r = BigRational::new(p, q);
        if negative {
            r = -r;
        }
        Ok(r)
    }

    fn name_list(&mut self) -> Result<Vec<(String, usize, usize)>> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.ident("a name")?];
        while self.eat(&Tok::Comma) {
            out.push(self.ident("a name")?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    // ---- expressions ----

    fn resolve_word(
        &self,
        scope: &Scope,
        word: &str,
        line: usize,
        col: usize,
    ) -> Result<ScalarExpr> {
        if let Some(sigma) = scope.bundle.base_index(word) {
            return ScalarExpr::base(scope.bundle, sigma);
        }
        if let Some(i) = scope.bundle.field_index(word) {
            return ScalarExpr::field(scope.bundle, i);
        }
        if scope.params.iter().any(|p| p == word) {
            return Ok(ScalarExpr::param(scope.bundle, word));
        }
        if let Some(split) = word.rfind('_') {
            let (prefix, rest) = word.split_at(split);
            let suffix = &rest[1..];
            if let Some(field) = scope.bundle.field_index(prefix) {
                if !suffix.is_empty() {
                    let n = scope.bundle.dim_base();
                    let mut entries = vec![0u32; n];
                    for c in suffix.chars() {
                        match scope.bundle.base_index(&c.to_string()) {
                            Some(sigma) => entries[sigma] += 1,
                            None => {
                                return self.err_at(
                                    line,
                                    col,
                                    format!(
                                        "undeclared base coordinate `{c}` in derivative subscript of `{word}`"
                                    ),
                                )
                            }
                        }
                    }
                    return ScalarExpr::jet(scope.bundle, field, MultiIndex::new(entries));
                }
            }
        }
        self.err_at(line, col, format!("undeclared identifier `{word}`"))
    }

    fn primary(&mut self, scope: &Scope, depth: usize) -> Result<ScalarExpr> {
        if depth > MAX_DEPTH {
            return self.err("expression nesting too deep");
        }
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Minus => {
                self.advance();
                Ok(-self.primary(scope, depth + 1)?)
            }
            Tok::Nat(_) => {
                let v = self.big_nat("a number")?;
                Ok(ScalarExpr::constant(scope.bundle, BigRational::from_integer(v)))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr(scope, depth + 1)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(word) => {
                self.advance();
                let func = match word.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "exp" => Some(Func::Exp),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect(Tok::LParen)?;
                    let arg = self.expr(scope, depth + 1)?;
                    self.expect(Tok::RParen)?;
                    return Ok(ScalarExpr::apply(f, arg));
                }
                if self.peek() == &Tok::LBracket {
                    self.advance();
                    let Some(field) = scope.bundle.field_index(&word) else {
                        return self.err_at(line, col, format!("undeclared field `{word}`"));
                    };
                    let mut entries = vec![self.nat_u32("a derivative order", MAX_EXPONENT)?];
                    while self.eat(&Tok::Comma) {
                        entries.push(self.nat_u32("a derivative order", MAX_EXPONENT)?);
                    }
                    self.expect(Tok::RBracket)?;
                    let n = scope.bundle.dim_base();
                    if entries.len() != n {
                        return self.err_at(
                            line,
                            col,
                            format!(
                                "multi-index length {} does not match base dimension {n}",
                                entries.len()
                            ),
                        );
                    }
                    return ScalarExpr::jet(scope.bundle, field, MultiIndex::new(entries));
                }
                self.resolve_word(scope, &word, line, col)
            }
            other => self.err(format!("expected an expression, found {}", other.describe())),
        }
    }

    fn factor(&mut self, scope: &Scope, depth: usize) -> Result<ScalarExpr> {
        let base = self.primary(scope, depth)?;
        if self.eat(&Tok::Caret) {
            let (line, col) = self.here();
            let k = self.nat_u32("an exponent", MAX_EXPONENT)?;
            self.pow_guard(&base, k, line, col)?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    /// The expansion of an `m`-term base to the `k`-th power has
    /// `C(k+m-1, m-1)` monomials; reject blowups before computing them.
    fn pow_guard(&self, base: &ScalarExpr, k: u32, line: usize, col: usize) -> Result<()> {
        let m = base.terms().len() as u128;
        if m <= 1 {
            return Ok(());
        }
        let mut est: u128 = 1;
        for i in 1..m {
            est = est.saturating_mul(u128::from(k) + i) / i;
            if est > 10_000 {
                return self.err_at(line, col, "power expansion too large");
            }
        }
        Ok(())
    }

    fn term(&mut self, scope: &Scope, depth: usize) -> Result<ScalarExpr> {
        let mut acc = self.factor(scope, depth)?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.factor(scope, depth)?;
            } else if self.peek() == &Tok::Slash {
                let (line, col) = self.here();
                self.advance();
                let rhs = self.factor(scope, depth)?;
                match rhs.as_constant() {
                    Some(q) if !q.is_zero() => {
                        acc = acc.div_q(&q).expect("nonzero divisor");
                    }
                    Some(_) => return self.err_at(line, col, "division by zero"),
                    None => return self.err_at(line, col, "division by a non-constant expression"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self, scope: &Scope, depth: usize) -> Result<ScalarExpr> {
        if depth > MAX_DEPTH {
            return self.err("expression nesting too deep");
        }
        let negative = self.eat(&Tok::Minus);
        let mut acc = self.term(scope, depth)?;
        if negative {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term(scope, depth)?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term(scope, depth)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // ---- vector fields ----

    /// One additive vector-field term: a multiplicative chain containing
    /// exactly one direction marker `d/d<name>`.
    fn vterm(&mut self, scope: &Scope) -> Result<(ScalarExpr, String, usize, usize)> {
        let mut coeff = ScalarExpr::one(scope.bundle);
        let mut dir: Option<(String, usize, usize)> = None;
        loop {
            if matches!(self.peek(), Tok::Ident(s) if s == "d") {
                let (line, col) = self.here();
                self.advance();
                self.expect(Tok::Slash)?;
                let (word, wl, wc) = self.ident("a direction `d<name>`")?;
                if word.len() < 2 || !word.starts_with('d') {
                    return self.err_at(wl, wc, format!("expected `d<name>`, found `{word}`"));
                }
                if dir.is_some() {
                    return self.err_at(line, col, "more than one direction in a term");
                }
                dir = Some((word[1..].to_string(), wl, wc));
            } else {
                let f = self.factor(scope, 0)?;
                coeff = &coeff * &f;
            }
            while self.peek() == &Tok::Slash {
                let (line, col) = self.here();
                self.advance();
                if matches!(self.peek(), Tok::Ident(s) if s == "d") {
                    return self.err_at(line, col, "cannot divide by a direction");
                }
                let rhs = self.factor(scope, 0)?;
                match rhs.as_constant() {
                    Some(q) if !q.is_zero() => coeff = coeff.div_q(&q).expect("nonzero divisor"),
                    Some(_) => return self.err_at(line, col, "division by zero"),
                    None => return self.err_at(line, col, "division by a non-constant expression"),
                }
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        match dir {
            Some((name, line, col)) => Ok((coeff, name, line, col)),
            None => self.err("vector-field term lacks a direction d/d<name>"),
        }
    }

    fn vfield_rhs(&mut self, scope: &Scope) -> Result<ProjectableVectorField> {
        let bundle = scope.bundle;
        let mut xi = vec![ScalarExpr::zero(bundle); bundle.dim_base()];
        let mut phi = vec![ScalarExpr::zero(bundle); bundle.dim_fiber()];
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let (mut coeff, name, line, col) = self.vterm(scope)?;
            if negative {
                coeff = -coeff;
            }
            if let Some(sigma) = bundle.base_index(&name) {
                xi[sigma] = &xi[sigma] + &coeff;
            } else if let Some(i) = bundle.field_index(&name) {
                phi[i] = &phi[i] + &coeff;
            } else {
                return self.err_at(line, col, format!("undeclared direction `{name}`"));
            }
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        ProjectableVectorField::new(bundle, xi, phi)
            .map_err(|e| self.semantic(e, "invalid vector field"))
    }

    fn semantic(&self, e: Error, what: &str) -> Error {
        let (line, col) = self.here();
        Error::Parse { line, col, msg: format!("{what}: {e}") }
    }

    // ---- declarations ----

    fn check_fresh(
        &self,
        registry: &BTreeSet<String>,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<()> {
        if RESERVED.contains(&name) {
            return self.err_at(line, col, format!("`{name}` is a reserved word"));
        }
        if !super::lexer::is_valid_ident(name) {
            return self.err_at(line, col, format!("invalid identifier `{name}`"));
        }
        if registry.contains(name) {
            return self.err_at(line, col, format!("`{name}` is already declared"));
        }
        Ok(())
    }

    pub(super) fn theory(&mut self) -> Result<Theory> {
        let mut registry: BTreeSet<String> = BTreeSet::new();
        let mut bundle: Option<Arc<BundleSpec>> = None;
        let mut metrics: Vec<Metric> = Vec::new();
        let mut params: Vec<String> = Vec::new();
        let mut lagrangians: Vec<(String, ScalarExpr)> = Vec::new();
        let mut vfields: Vec<(String, ProjectableVectorField)> = Vec::new();
        let mut gauges: Vec<GaugeBlock> = Vec::new();

        loop {
            if self.peek() == &Tok::Eof {
                break;
            }
            let (kw, kline, kcol) = self.ident("a declaration")?;
            if kw != "bundle" && bundle.is_none() {
                return self.err_at(kline, kcol, "the file must start with a bundle declaration");
            }
            match kw.as_str() {
                "bundle" => {
                    if bundle.is_some() {
                        return self.err_at(kline, kcol, "more than one bundle declaration");
                    }
                    self.expect(Tok::LBrace)?;
                    let (bword, bl, bc) = self.ident("`base`")?;
                    if bword != "base" {
                        return self.err_at(bl, bc, "expected `base`");
                    }
                    self.expect(Tok::Colon)?;
                    let base = self.name_list()?;
                    self.expect(Tok::Semi)?;
                    let (fword, fl, fc) = self.ident("`fields`")?;
                    if fword != "fields" {
                        return self.err_at(fl, fc, "expected `fields`");
                    }
                    self.expect(Tok::Colon)?;
                    let fields = self.name_list()?;
                    self.expect(Tok::Semi)?;
                    self.expect(Tok::RBrace)?;
                    for (name, line, col) in base.iter().chain(fields.iter()) {
                        self.check_fresh(&registry, name, *line, *col)?;
                        registry.insert(name.clone());
                    }
                    let spec = BundleSpec::new(
                        base.into_iter().map(|(n, _, _)| n).collect(),
                        fields.into_iter().map(|(n, _, _)| n).collect(),
                    )
                    .map_err(|e| Error::Parse {
                        line: kline,
                        col: kcol,
                        msg: format!("invalid bundle: {e}"),
                    })?;
                    bundle = Some(spec);
                }
                "metric" => {
                    let (name, nl, nc) = self.ident("a metric name")?;
                    self.check_fresh(&registry, &name, nl, nc)?;
                    registry.insert(name.clone());
                    self.expect(Tok::Equals)?;
                    let (mline, mcol) = self.here();
                    self.expect(Tok::LBracket)?;
                    let mut rows = Vec::new();
                    loop {
                        self.expect(Tok::LBracket)?;
                        let mut row = vec![self.signed_rational()?];
                        while self.eat(&Tok::Comma) {
                            row.push(self.signed_rational()?);
                        }
                        self.expect(Tok::RBracket)?;
                        rows.push(row);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket)?;
                    let n = bundle.as_ref().expect("bundle first").dim_base();
                    let metric = Metric::new(name, rows, n).map_err(|e| Error::Parse {
                        line: mline,
                        col: mcol,
                        msg: e.to_string(),
                    })?;
                    metrics.push(metric);
                }
                "param" => {
                    let (name, nl, nc) = self.ident("a parameter name")?;
                    self.check_fresh(&registry, &name, nl, nc)?;
                    registry.insert(name.clone());
                    params.push(name);
                }
                "lagrangian" => {
                    let (name, nl, nc) = self.ident("a Lagrangian name")?;
                    self.check_fresh(&registry, &name, nl, nc)?;
                    registry.insert(name.clone());
                    self.expect(Tok::Equals)?;
                    let scope =
                        Scope { bundle: bundle.as_ref().expect("bundle first"), params: &params };
                    let e = self.expr(&scope, 0)?;
                    lagrangians.push((name, e));
                }
                "vfield" => {
                    let (name, nl, nc) = self.ident("a vector-field name")?;
                    self.check_fresh(&registry, &name, nl, nc)?;
                    registry.insert(name.clone());
                    self.expect(Tok::Equals)?;
                    let scope =
                        Scope { bundle: bundle.as_ref().expect("bundle first"), params: &params };
                    let v = self.vfield_rhs(&scope)?;
                    vfields.push((name, v));
                }
                "gauge" => {
                    let (name, nl, nc) = self.ident("a gauge name")?;
                    self.check_fresh(&registry, &name, nl, nc)?;
                    registry.insert(name.clone());
                    self.expect(Tok::LParen)?;
                    let mut gparams = vec![self.ident("a parameter-field name")?];
                    while self.eat(&Tok::Comma) {
                        gparams.push(self.ident("a parameter-field name")?);
                    }
                    self.expect(Tok::RParen)?;
                    for (p, pl, pc) in &gparams {
                        self.check_fresh(&registry, p, *pl, *pc)?;
                    }
                    for i in 1..gparams.len() {
                        if gparams[..i].iter().any(|(q, _, _)| q == &gparams[i].0) {
                            let (p, pl, pc) = &gparams[i];
                            return self.err_at(*pl, *pc, format!("`{p}` is already declared"));
                        }
                    }
                    self.expect(Tok::Colon)?;
                    let matter = bundle.as_ref().expect("bundle first").clone();
                    let extended = matter
                        .extend(gparams.iter().map(|(p, _, _)| p.clone()).collect())
                        .map_err(|e| Error::Parse {
                            line: kline,
                            col: kcol,
                            msg: format!("invalid gauge parameters: {e}"),
                        })?;
                    let mut components = vec![ScalarExpr::zero(&extended); matter.dim_fiber()];
                    let mut seen = vec![false; matter.dim_fiber()];
                    loop {
                        let (fname, fl, fc) = self.ident("a field name")?;
                        let Some(i) = matter.field_index(&fname) else {
                            return self.err_at(fl, fc, format!("undeclared field `{fname}`"));
                        };
                        if seen[i] {
                            return self.err_at(fl, fc, format!("field `{fname}` mapped twice"));
                        }
                        seen[i] = true;
                        self.expect(Tok::Arrow)?;
                        let scope = Scope { bundle: &extended, params: &params };
                        components[i] = self.expr(&scope, 0)?;
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    let generator = GaugeGenerator::new(&matter, components)
                        .map_err(|e| self.semantic(e, "invalid gauge generator"))?;
                    gauges.push(GaugeBlock { name, generator });
                }
                other => {
                    return self.err_at(
                        kline,
                        kcol,
                        format!("expected a declaration keyword, found `{other}`"),
                    )
                }
            }
        }
        let Some(bundle) = bundle else {
            return self.err("empty input: a bundle declaration is required");
        };
        Ok(Theory { bundle, metrics, params, lagrangians, vfields, gauges })
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_theory;
    use crate::error::Error;
    use crate::jetspace::MultiIndex;
    use crate::symkernel::ScalarExpr;

    #[test]
    fn wave_file_parses() {
        let t = parse_theory(
            "bundle { base: [t, x]; fields: [u]; }\nlagrangian L = 1/2*(u_t^2 - u_x^2)\nvfield X = d/dx\n",
        )
        .unwrap();
        let b = t.bundle();
        let u_t = ScalarExpr::jet(b, 0, MultiIndex::new(vec![1, 0])).unwrap();
        let u_x = ScalarExpr::jet(b, 0, MultiIndex::new(vec![0, 1])).unwrap();
        let expect = ((&u_t * &u_t) - (&u_x * &u_x))
            .scale(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(t.lagrangians()[0].1, expect);
        let x = &t.vfields()[0].1;
        assert!(x.xi()[0].is_zero());
        assert!(x.xi()[1].is_one());
        assert!(x.phi()[0].is_zero());
    }

    #[test]
    fn jet_notations_agree() {
        let t = parse_theory(
            "bundle { base: [t, x]; fields: [u]; }\nlagrangian A = u_tx\nlagrangian B = u[1,1]\n",
        )
        .unwrap();
        assert_eq!(t.lagrangians()[0].1, t.lagrangians()[1].1);
    }

    #[test]
    fn undeclared_subscript_letter_is_an_error() {
        let err = parse_theory("bundle { base: [t, x]; fields: [u]; }\nlagrangian L = u_y\n")
            .unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains("`y`"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gauge_block_builds_generator() {
        let t = parse_theory(
            "bundle { base: [t, x]; fields: [a0, a1]; }\ngauge R(chi) : a0 -> chi_t, a1 -> chi_x\n",
        )
        .unwrap();
        let g = &t.gauges()[0];
        assert_eq!(g.name, "R");
        assert_eq!(g.generator.parameter_names(), &["chi".to_string()]);
        let ext = g.generator.extended_bundle();
        let chi_t = ScalarExpr::jet(ext, 2, MultiIndex::new(vec![1, 0])).unwrap();
        assert_eq!(g.generator.components()[0], chi_t);
    }

    #[test]
    fn structured_errors_with_positions() {
        for (src, want) in [
            ("bundle { base: [t]; fields: [u]; } lagrangian L = u/u", "non-constant"),
            ("bundle { base: [t]; fields: [u]; } lagrangian L = u/0", "division by zero"),
            ("bundle { base: [t]; fields: [u]; } lagrangian L = v", "undeclared"),
            ("bundle { base: [t]; fields: [u]; } lagrangian L = u[1,2]", "multi-index length"),
            ("bundle { base: [t]; fields: [u]; } param sin", "reserved"),
            ("bundle { base: [t]; fields: [u]; } param u", "already declared"),
            ("lagrangian L = 1", "must start with a bundle"),
            (
                "bundle { base: [t]; fields: [u]; } bundle { base: [s]; fields: [v]; }",
                "more than one bundle",
            ),
            ("bundle { base: [t]; fields: [u]; } vfield X = u", "lacks a direction"),
            ("bundle { base: [t, x]; fields: [u]; } metric g = [[1,2],[3,4]]", "symmetric"),
            ("bundle { base: [t]; fields: [u]; } metric g = [[1,2],[2,4]]", "base dimension"),
        ] {
            let err = parse_theory(src).unwrap_err();
            match err {
                Error::Parse { msg, .. } => assert!(msg.contains(want), "{src}: {msg}"),
                other => panic!("{src}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let mut src = String::from("bundle { base: [t]; fields: [u]; }\nlagrangian L = ");
        src.push_str(&"(".repeat(400));
        src.push('u');
        src.push_str(&")".repeat(400));
        let err = parse_theory(&src).unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("nesting"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
