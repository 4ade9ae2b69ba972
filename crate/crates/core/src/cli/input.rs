//! The problem input language.
//!
//! ```text
//! ring S vars (x, y, z) weights (1, 1, 1) field QQ;
//! ideal I = (x*z - y^2);
//! order lex;
//! window -10:5;
//! ```
//!
//! A submodule of a free module is declared as
//! `module M rank 2 twists (0, 1) = ([x, y], [0, z]);`. Further directives:
//! `index <i>;`, `at <c>, ...;` or `at generic;`, `output "<path>";` and
//! `command <name>;`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{AlgebraError, Result};
use crate::field::{format_rational, CoefficientField, Field, PrimeField, Rationals};
use crate::groebner::SubmodulePresentation;
use crate::module::GradedFreeModule;
use crate::parse::{describe, parse_expr, tokenize, Cursor, Tok};
use crate::poly::Polynomial;
use crate::ring::{GradedRing, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    pub field: CoefficientField,
    pub parameter: Option<String>,
}

impl RingDecl {
    pub fn build<F: Field>(&self, field: F) -> Result<GradedRing<F>> {
        let mut names = self.variables.clone();
        names.extend(self.parameter.clone());
        GradedRing::with_names(&self.weights, self.parameter.is_some(), field, names)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    Ideal,
    Module,
}

/// Generators stored in canonical printed form, one string per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub kind: ModuleKind,
    pub name: String,
    pub twists: Vec<i64>,
    pub generators: Vec<Vec<String>>,
}

impl ModuleDecl {
    fn zero_ideal() -> Self {
        ModuleDecl {
            kind: ModuleKind::Ideal,
            name: "I".into(),
            twists: vec![0],
            generators: Vec::new(),
        }
    }
}

/// Points of the parameter line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSelection {
    List(Vec<BigRational>),
    Generic,
    /// `k` distinct integers drawn from `[0, 1000)`.
    Random(usize),
}

impl fmt::Display for PointSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSelection::List(v) => {
                let s: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "{}", s.join(", "))
            }
            PointSelection::Generic => write!(f, "generic"),
            PointSelection::Random(k) => write!(f, "random {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub ring: RingDecl,
    pub module: ModuleDecl,
    pub order: Option<TermOrder>,
    pub window: Option<(i64, i64)>,
    pub index: Option<i64>,
    pub at: Option<PointSelection>,
    pub output: Option<String>,
    pub command: Option<String>,
}

impl ProblemSpec {
    pub fn num_vars(&self) -> usize {
        self.ring.variables.len()
    }

    /// The ring and submodule over `field`.
    pub fn build<F: Field>(&self, field: F) -> Result<SubmodulePresentation<F>> {
        let ring = self.ring.build(field)?;
        let amb = GradedFreeModule::new(&ring, self.module.twists.clone());
        let gens = self
            .module
            .generators
            .iter()
            .map(|g| {
                let comps = g
                    .iter()
                    .map(|s| Polynomial::parse(&ring, s))
                    .collect::<Result<Vec<_>>>()?;
                amb.vector(comps)
            })
            .collect::<Result<Vec<_>>>()?;
        SubmodulePresentation::new(&amb, gens)
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        write!(
            f,
            "ring {} vars ({}) weights ({}) field {}",
            r.name,
            r.variables.join(", "),
            join(&r.weights),
            r.field
        )?;
        if let Some(t) = &r.parameter {
            write!(f, " param {t}")?;
        }
        writeln!(f, ";")?;
        let m = &self.module;
        match m.kind {
            ModuleKind::Ideal => {
                let g: Vec<&str> = m.generators.iter().map(|g| g[0].as_str()).collect();
                writeln!(f, "ideal {} = ({});", m.name, g.join(", "))?;
            }
            ModuleKind::Module => {
                let g: Vec<String> = m.generators.iter().map(|g| format!("[{}]", g.join(", "))).collect();
                writeln!(
                    f,
                    "module {} rank {} twists ({}) = ({});",
                    m.name,
                    m.twists.len(),
                    join(&m.twists),
                    g.join(", ")
                )?;
            }
        }
        if let Some(o) = &self.order {
            match o {
                TermOrder::Weighted { weights, .. } => writeln!(f, "order weights ({});", join(weights))?,
                other => writeln!(f, "order {other};")?,
            }
        }
        if let Some((lo, hi)) = self.window {
            writeln!(f, "window {lo}:{hi};")?;
        }
        if let Some(i) = self.index {
            writeln!(f, "index {i};")?;
        }
        if let Some(a) = &self.at {
            writeln!(f, "at {a};")?;
        }
        if let Some(o) = &self.output {
            writeln!(f, "output \"{o}\";")?;
        }
        if let Some(c) = &self.command {
            writeln!(f, "command {c};")?;
        }
        Ok(())
    }
}

enum AnyRing {
    Rationals(GradedRing<Rationals>),
    Prime(GradedRing<PrimeField>),
}

impl AnyRing {
    fn new(decl: &RingDecl) -> Result<Self> {
        Ok(match decl.field {
            CoefficientField::Rationals => AnyRing::Rationals(decl.build(Rationals)?),
            CoefficientField::Prime(p) => AnyRing::Prime(decl.build(PrimeField::new(p)?)?),
        })
    }

    fn canonical(&self, cur: &mut Cursor<'_>) -> Result<String> {
        match self {
            AnyRing::Rationals(r) => Ok(parse_expr(cur, r)?.to_string()),
            AnyRing::Prime(r) => Ok(parse_expr(cur, r)?.to_string()),
        }
    }
}

fn list<T>(cur: &mut Cursor<'_>, mut item: impl FnMut(&mut Cursor<'_>) -> Result<T>) -> Result<Vec<T>> {
    cur.expect_sym('(')?;
    let mut out = Vec::new();
    if cur.eat_sym(')') {
        return Ok(out);
    }
    loop {
        out.push(item(cur)?);
        if cur.eat_sym(')') {
            return Ok(out);
        }
        cur.expect_sym(',')?;
    }
}

fn small_uint(cur: &mut Cursor<'_>) -> Result<u32> {
    let t = cur.peek().clone();
    let n = cur.expect_int()?;
    n.to_u32().ok_or_else(|| AlgebraError::Parse {
        line: t.line,
        column: t.column,
        message: format!("integer {n} out of range"),
    })
}

fn rational(cur: &mut Cursor<'_>) -> Result<BigRational> {
    let neg = cur.eat_sym('-');
    let n = cur.expect_int()?;
    let d = if cur.eat_sym('/') { cur.expect_int()? } else { BigInt::one() };
    if d == BigInt::from(0) {
        return cur.error("zero denominator");
    }
    let q = BigRational::new(n, d);
    Ok(if neg { -q } else { q })
}

fn parse_ring(cur: &mut Cursor<'_>) -> Result<RingDecl> {
    let (line, column) = (cur.peek().line, cur.peek().column);
    cur.expect_keyword("ring")?;
    let name = cur.expect_ident()?;
    cur.expect_keyword("vars")?;
    let variables = list(cur, |c| c.expect_ident())?;
    cur.expect_keyword("weights")?;
    let weights = list(cur, small_uint)?;
    cur.expect_keyword("field")?;
    let field = if cur.at_keyword("QQ") {
        cur.next();
        CoefficientField::Rationals
    } else if cur.at_keyword("Fp") {
        cur.next();
        cur.eat_sym(':');
        CoefficientField::Prime(small_uint(cur)?)
    } else {
        return cur.error(format!("expected `QQ` or `Fp`, found {}", describe(&cur.peek().tok)));
    };
    let parameter = if cur.at_keyword("param") {
        cur.next();
        Some(cur.expect_ident()?)
    } else {
        None
    };
    cur.expect_sym(';')?;
    if variables.len() != weights.len() {
        return Err(AlgebraError::Parse {
            line,
            column,
            message: format!("{} variables but {} weights", variables.len(), weights.len()),
        });
    }
    Ok(RingDecl {
        name,
        variables,
        weights,
        field: field.validate()?,
        parameter,
    })
}

fn parse_vector(cur: &mut Cursor<'_>, ring: &AnyRing, rank: usize) -> Result<Vec<String>> {
    let (line, column) = (cur.peek().line, cur.peek().column);
    let comps = if cur.eat_sym('[') {
        let mut v = vec![ring.canonical(cur)?];
        while cur.eat_sym(',') {
            v.push(ring.canonical(cur)?);
        }
        cur.expect_sym(']')?;
        v
    } else {
        vec![ring.canonical(cur)?]
    };
    if comps.len() != rank {
        return Err(AlgebraError::Parse {
            line,
            column,
            message: format!("expected {rank} components, found {}", comps.len()),
        });
    }
    Ok(comps)
}

fn parse_module(cur: &mut Cursor<'_>, ring: &AnyRing) -> Result<ModuleDecl> {
    if cur.at_keyword("ideal") {
        cur.next();
        let name = cur.expect_ident()?;
        cur.expect_sym('=')?;
        let generators = list(cur, |c| Ok(vec![ring.canonical(c)?]))?;
        cur.expect_sym(';')?;
        return Ok(ModuleDecl {
            kind: ModuleKind::Ideal,
            name,
            twists: vec![0],
            generators,
        });
    }
    cur.expect_keyword("module")?;
    let name = cur.expect_ident()?;
    cur.expect_keyword("rank")?;
    let rank = small_uint(cur)? as usize;
    let twists = if cur.at_keyword("twists") {
        cur.next();
        let (line, column) = (cur.peek().line, cur.peek().column);
        let t = list(cur, |c| c.expect_signed_int())?;
        if t.len() != rank {
            return Err(AlgebraError::Parse {
                line,
                column,
                message: format!("expected {rank} twists, found {}", t.len()),
            });
        }
        t
    } else {
        vec![0; rank]
    };
    cur.expect_sym('=')?;
    let generators = list(cur, |c| parse_vector(c, ring, rank))?;
    cur.expect_sym(';')?;
    Ok(ModuleDecl {
        kind: ModuleKind::Module,
        name,
        twists,
        generators,
    })
}

/// Reports the first identifier of an ideal or module declared before any ring.
fn undeclared(cur: &mut Cursor<'_>) -> Result<ProblemSpec> {
    while !cur.at_eof() {
        let t = cur.next();
        if let Tok::Ident(name) = t.tok {
            if !matches!(name.as_str(), "ideal" | "module" | "rank" | "twists") {
                let followed_by_eq = cur.at_sym('=');
                if !followed_by_eq {
                    return Err(AlgebraError::UndeclaredVariable {
                        name,
                        line: t.line,
                        column: t.column,
                    });
                }
            }
        }
    }
    cur.error("missing ring declaration")
}

fn parse_command_name(cur: &mut Cursor<'_>) -> Result<String> {
    let mut s = cur.expect_ident()?;
    while cur.eat_sym('-') {
        s.push('-');
        s.push_str(&cur.expect_ident()?);
    }
    Ok(s)
}

fn parse_order(cur: &mut Cursor<'_>) -> Result<TermOrder> {
    let t = cur.peek().clone();
    let name = cur.expect_ident()?;
    if name == "weights" {
        let w = list(cur, |c| Ok(u64::from(small_uint(c)?)))?;
        return Ok(TermOrder::weighted(w, TermOrder::Grevlex));
    }
    TermOrder::parse(&name).map_err(|e| AlgebraError::Parse {
        line: t.line,
        column: t.column,
        message: e.to_string(),
    })
}

/// Parses a problem file.
pub fn parse_input(text: &str) -> Result<ProblemSpec> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    if cur.at_keyword("ideal") || cur.at_keyword("module") {
        return undeclared(&mut cur);
    }
    let ring_decl = parse_ring(&mut cur)?;
    let ring = AnyRing::new(&ring_decl)?;
    let module = if cur.at_keyword("ideal") || cur.at_keyword("module") {
        parse_module(&mut cur, &ring)?
    } else {
        ModuleDecl::zero_ideal()
    };
    let mut spec = ProblemSpec {
        ring: ring_decl,
        module,
        order: None,
        window: None,
        index: None,
        at: None,
        output: None,
        command: None,
    };
    while !cur.at_eof() {
        let kw = cur.peek().clone();
        let name = cur.expect_ident()?;
        let duplicate = match name.as_str() {
            "order" => spec.order.replace(parse_order(&mut cur)?).is_some(),
            "window" => {
                let lo = cur.expect_signed_int()?;
                cur.expect_sym(':')?;
                let hi = cur.expect_signed_int()?;
                if lo > hi {
                    return Err(AlgebraError::Parse {
                        line: kw.line,
                        column: kw.column,
                        message: format!("empty window {lo}:{hi}"),
                    });
                }
                spec.window.replace((lo, hi)).is_some()
            }
            "index" => spec.index.replace(cur.expect_signed_int()?).is_some(),
            "at" => {
                let sel = if cur.at_keyword("generic") {
                    cur.next();
                    PointSelection::Generic
                } else if cur.at_keyword("random") {
                    cur.next();
                    PointSelection::Random(small_uint(&mut cur)? as usize)
                } else {
                    let mut v = vec![rational(&mut cur)?];
                    while cur.eat_sym(',') {
                        v.push(rational(&mut cur)?);
                    }
                    PointSelection::List(v)
                };
                spec.at.replace(sel).is_some()
            }
            "output" => match cur.next().tok {
                Tok::Str(s) => spec.output.replace(s).is_some(),
                other => {
                    return Err(AlgebraError::Parse {
                        line: kw.line,
                        column: kw.column,
                        message: format!("expected a quoted path, found {}", describe(&other)),
                    })
                }
            },
            "command" => spec.command.replace(parse_command_name(&mut cur)?).is_some(),
            "ideal" | "module" | "ring" => {
                return Err(AlgebraError::Parse {
                    line: kw.line,
                    column: kw.column,
                    message: format!("only one `ring` and one ideal or module are allowed, and `{name}` must come first"),
                })
            }
            other => {
                return Err(AlgebraError::Parse {
                    line: kw.line,
                    column: kw.column,
                    message: format!("unknown directive `{other}`"),
                })
            }
        };
        if duplicate {
            return Err(AlgebraError::Parse {
                line: kw.line,
                column: kw.column,
                message: format!("duplicate `{name}` directive"),
            });
        }
        cur.expect_sym(';')?;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic() {
        let s = parse_input("ring S vars (x,y,z) weights (1,1,1) field QQ; ideal I = (x*z - y^2);").unwrap();
        assert_eq!(s.num_vars(), 3);
        assert_eq!(s.module.generators, vec![vec!["-y^2 + x*z".to_string()]]);
        let p = s.build(Rationals).unwrap();
        assert!(p.is_ideal());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_input("ideal I = (x*w);"),
            Err(AlgebraError::UndeclaredVariable { ref name, line: 1, column: 12 }) if name == "x"
        ));
        assert!(matches!(
            parse_input("ring S vars (x) weights (0) field QQ;"),
            Err(AlgebraError::InvalidGrading(_))
        ));
        assert!(matches!(
            parse_input("ring S vars (x) weights (1) field Fp 12;"),
            Err(AlgebraError::InvalidField(_))
        ));
        assert!(matches!(
            parse_input("ring S vars (x) weights (1) field QQ;\nideal I = (x +);"),
            Err(AlgebraError::Parse { line: 2, column: 15, .. })
        ));
        assert!(matches!(
            parse_input("ring S vars (x) weights (1) field QQ; ideal I = (y);"),
            Err(AlgebraError::UndeclaredVariable { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let text = "ring R vars (x, y) weights (1, 2) field Fp:7 param s;
            module M rank 2 twists (0, -1) = ([x*s, y], [0, 8*x^3]);
            order weights (1, 2); window -5:3; index 1; at 0, 1/2, -3;
            output \"out.json\"; command cv-verify;";
        let s = parse_input(text).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_input(&printed).unwrap(), s);
        assert_eq!(s.module.generators[1][1], "x^3");
        assert_eq!(s.command.as_deref(), Some("cv-verify"));
    }

    #[test]
    fn zero_ideal_without_declaration() {
        let s = parse_input("ring S vars (x,y,z) weights (1,1,1) field QQ; window -5:0;").unwrap();
        assert!(s.module.generators.is_empty());
        assert_eq!(parse_input(&s.to_string()).unwrap(), s);
    }
}
