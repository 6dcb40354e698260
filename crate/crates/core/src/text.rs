//! Text forms for atoms, subgroups, representations, object descriptions
//! and polynomials.
//!
//! ```text
//! object  = "f(" sub "," "(" atom ")" ")" | "a(" sub "," "(" atom ")" ")"
//!         | "b(" sub "," euler "," int ")" | "prod(" [object {"," object}] ")"
//! sub     = "G" | "1" | "C" int | "circle(" int "," int ")"
//! euler   = "0" | "e[" char {"+" char} "]"
//! char    = "(" int {"," int} ")" ["^" int]
//! atom    = "free" ["(" int ")"] | "cyc(" int ["," int] ")" | "dual" ["(" ring ")"]
//!         | "tate" | "koszul(" ring "," int ")" | "lcoh(" ring ")"
//!         | "susp(" int "," atom ")" | "sum(" [atom {"," atom}] ")" | "trunc(" int ")"
//! ring    = "Q" | "Q[c]" | "Q[x]" | "Q[x,y]"
//! poly    = term {("+" | "-") term}
//! term    = [int ["/" int]] ["*"] {var ["^" int] ["*"]}
//! ```
//!
//! Whitespace is allowed between tokens. `cyc(n)` is `cyc(0,n)`.

use std::fmt;

use crate::atcat::Desc;
use crate::error::{Error, Result};
use crate::gmod::Atom;
use crate::qlinalg::Q;
use crate::rings::{ConnSubgroup, EulerClass, LinearForm, Mono, Poly, Subgroup};

/// A position-tracking cursor over the input.
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let n: usize = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).map(|c| c.len_utf8()).sum();
        let s = self.rest()[..n].to_string();
        self.pos += n;
        s
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let sign = usize::from(r.starts_with('-') || r.starts_with('+'));
        let digits = r[sign..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        let v = r[..sign + digits].parse::<i64>().map_err(|e| self.err(e.to_string()))?;
        self.pos += sign + digits;
        Ok(v)
    }

    fn uint(&mut self) -> Result<u32> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.err("expected a nonnegative integer"))
    }

    pub fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn whole<T>(s: &str, f: impl FnOnce(&mut Cursor) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(s);
    let v = f(&mut c)?;
    c.finish()?;
    Ok(v)
}

pub fn parse_atom(s: &str) -> Result<Atom> {
    whole(s, atom)
}

pub fn parse_subgroup(s: &str) -> Result<Subgroup> {
    whole(s, subgroup)
}

pub fn parse_euler(s: &str) -> Result<EulerClass> {
    whole(s, euler)
}

pub fn parse_object(s: &str) -> Result<Desc> {
    whole(s, object)
}

/// Number of variables of a ring name.
pub fn parse_ring(s: &str) -> Result<usize> {
    whole(s, ring)
}

fn ring(c: &mut Cursor) -> Result<usize> {
    c.expect("Q")?;
    if !c.eat("[") {
        return Ok(0);
    }
    let mut n = 0;
    loop {
        let v = c.ident();
        if v.is_empty() {
            return Err(c.err("expected a variable name"));
        }
        n += 1;
        if c.eat("]") {
            return Ok(n);
        }
        c.expect(",")?;
    }
}

fn atom(c: &mut Cursor) -> Result<Atom> {
    let name = c.ident();
    Ok(match name.as_str() {
        "free" => Atom::Free(if c.eat("(") {
            let a = c.int()?;
            c.expect(")")?;
            a
        } else {
            0
        }),
        "cyc" => {
            c.expect("(")?;
            let a = c.int()?;
            let at = if c.eat(",") { Atom::Cyclic(a, c.uint()?) } else { Atom::Cyclic(0, u32::try_from(a).map_err(|_| c.err("negative length"))?) };
            c.expect(")")?;
            at
        }
        "dual" => Atom::Dual(if c.eat("(") {
            let n = ring(c)?;
            c.expect(")")?;
            n
        } else {
            1
        }),
        "tate" => Atom::Tate,
        "koszul" => {
            c.expect("(")?;
            let s = ring(c)?;
            c.expect(",")?;
            let n = c.uint()?;
            c.expect(")")?;
            Atom::KoszulQuot(s, n)
        }
        "lcoh" => {
            c.expect("(")?;
            let s = ring(c)?;
            c.expect(")")?;
            Atom::LocCohTop(s)
        }
        "susp" => {
            c.expect("(")?;
            let a = c.int()?;
            c.expect(",")?;
            let x = atom(c)?;
            c.expect(")")?;
            Atom::Susp(a, Box::new(x))
        }
        "sum" => {
            c.expect("(")?;
            let mut parts = Vec::new();
            if !c.eat(")") {
                loop {
                    parts.push(atom(c)?);
                    if c.eat(")") {
                        break;
                    }
                    c.expect(",")?;
                }
            }
            Atom::Sum(parts)
        }
        "trunc" => {
            c.expect("(")?;
            let n = c.uint()?;
            c.expect(")")?;
            Atom::Trunc(n)
        }
        "" => return Err(c.err("expected an atom")),
        other => return Err(c.err(format!("unknown atom `{other}`"))),
    })
}

fn subgroup(c: &mut Cursor) -> Result<Subgroup> {
    if c.eat("G") {
        return Ok(Subgroup::whole());
    }
    if c.peek() == Some('1') {
        c.expect("1")?;
        return Ok(Subgroup::trivial());
    }
    if c.eat("circle") {
        c.expect("(")?;
        let p = c.int()?;
        c.expect(",")?;
        let q = c.int()?;
        c.expect(")")?;
        return Ok(Subgroup::connected(ConnSubgroup::circle(p, q)?));
    }
    if c.eat("C") {
        let n = c.int()?;
        if n < 1 {
            return Err(c.err("cyclic groups have positive order"));
        }
        return Ok(Subgroup::cyclic(n as u64));
    }
    Err(c.err("expected a subgroup: G, 1, Cn or circle(p,q)"))
}

fn euler(c: &mut Cursor) -> Result<EulerClass> {
    if c.peek() == Some('0') {
        c.expect("0")?;
        return Ok(EulerClass::default());
    }
    c.expect("e[")?;
    let mut chars = Vec::new();
    loop {
        c.expect("(")?;
        let mut v = vec![c.int()?];
        while c.eat(",") {
            v.push(c.int()?);
        }
        c.expect(")")?;
        let m = if c.eat("^") { c.uint()? } else { 1 };
        chars.push((v, m));
        if c.eat("]") {
            break;
        }
        c.expect("+")?;
    }
    Ok(EulerClass::new(chars))
}

fn object(c: &mut Cursor) -> Result<Desc> {
    let name = c.ident();
    match name.as_str() {
        "f" | "a" => {
            c.expect("(")?;
            let k = subgroup(c)?;
            c.expect(",")?;
            c.expect("(")?;
            let x = atom(c)?;
            c.expect(")")?;
            c.expect(")")?;
            Ok(if name == "f" { Desc::F(k, x) } else { Desc::A(k, x) })
        }
        "b" => {
            c.expect("(")?;
            let k = subgroup(c)?;
            c.expect(",")?;
            let v = euler(c)?;
            c.expect(",")?;
            let n = c.uint()?;
            c.expect(")")?;
            Ok(Desc::B(k, v, n))
        }
        "prod" => {
            c.expect("(")?;
            let mut parts = Vec::new();
            if !c.eat(")") {
                loop {
                    parts.push(object(c)?);
                    if c.eat(")") {
                        break;
                    }
                    c.expect(",")?;
                }
            }
            Ok(Desc::Prod(parts))
        }
        "" => Err(c.err("expected an object")),
        other => Err(c.err(format!("unknown object constructor `{other}`"))),
    }
}

pub fn euler_string(v: &EulerClass) -> String {
    if v.chars.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = v
        .chars
        .iter()
        .map(|(c, m)| {
            let body = c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            if *m == 1 {
                format!("({body})")
            } else {
                format!("({body})^{m}")
            }
        })
        .collect();
    format!("e[{}]", parts.join("+"))
}

impl fmt::Display for Desc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Desc::F(k, a) => write!(f, "f({k},({a}))"),
            Desc::A(k, a) => write!(f, "a({k},({a}))"),
            Desc::B(k, v, n) => write!(f, "b({k},{},{n})", euler_string(v)),
            Desc::Prod(parts) => {
                f.write_str("prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Polynomials in the named variables.
pub fn parse_poly(s: &str, vars: &[&str]) -> Result<Poly> {
    whole(s, |c| poly(c, vars))
}

/// A comma-separated list of polynomials.
pub fn parse_poly_list(s: &str, vars: &[&str]) -> Result<Vec<Poly>> {
    whole(s, |c| {
        let mut out = vec![poly(c, vars)?];
        while c.eat(",") {
            out.push(poly(c, vars)?);
        }
        Ok(out)
    })
}

/// Linear forms written as polynomials, e.g. `x, x+y, 2x-y`.
pub fn parse_forms(s: &str, vars: &[&str]) -> Result<Vec<LinearForm>> {
    let polys = parse_poly_list(s, vars)?;
    polys
        .iter()
        .map(|p| {
            if p.degree() != Some(-2) || !p.is_homogeneous() {
                return Err(Error::Parse { line: 1, col: 1, msg: format!("not a linear form: {}", p.fmt_with(&names(vars))) });
            }
            let coeffs: Vec<i64> = (0..vars.len())
                .map(|i| {
                    let c = p.coeff(&Mono::var(vars.len(), i));
                    if !c.is_integer() {
                        return Err(Error::Parse { line: 1, col: 1, msg: "forms need integer coefficients".into() });
                    }
                    i64::try_from(c.to_integer()).map_err(|_| Error::Parse { line: 1, col: 1, msg: "coefficient too large".into() })
                })
                .collect::<Result<_>>()?;
            LinearForm::new(&coeffs)
        })
        .collect()
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn poly(c: &mut Cursor, vars: &[&str]) -> Result<Poly> {
    let n = vars.len();
    let mut acc = Poly::zero(n);
    let mut sign = if c.eat("-") {
        -1
    } else {
        c.eat("+");
        1
    };
    loop {
        let t = term(c, vars)?;
        acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        sign = if c.eat("+") {
            1
        } else if c.eat("-") {
            -1
        } else {
            break;
        };
    }
    Ok(acc)
}

fn term(c: &mut Cursor, vars: &[&str]) -> Result<Poly> {
    let n = vars.len();
    let mut coeff = Q::from_integer(1.into());
    let mut saw = false;
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let a = c.int()?;
        let b = if c.eat("/") { c.int()? } else { 1 };
        if b == 0 {
            return Err(c.err("zero denominator"));
        }
        coeff = Q::new(a.into(), b.into());
        saw = true;
        c.eat("*");
    }
    let mut exps = vec![0u32; n];
    loop {
        let save = c.pos;
        let v = c.ident();
        if v.is_empty() {
            break;
        }
        let Some(i) = vars.iter().position(|w| *w == v) else {
            c.pos = save;
            return Err(c.err(format!("unknown variable `{v}`")));
        };
        let e = if c.eat("^") { c.uint()? } else { 1 };
        exps[i] += e;
        saw = true;
        c.eat("*");
    }
    if !saw {
        return Err(c.err("expected a term"));
    }
    Ok(Poly::monomial(Mono(exps), coeff))
}

/// Default variable names for a ring with `n` generators.
pub fn default_vars(n: usize) -> Vec<&'static str> {
    match n {
        0 => vec![],
        1 => vec!["c"],
        _ => vec!["x", "y"],
    }
}

/// Parses `lo:hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    whole(s, |c| {
        let lo = c.int()?;
        c.expect(":")?;
        let hi = c.int()?;
        if hi < lo {
            return Err(c.err("empty window"));
        }
        Ok((lo, hi))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_round_trip() {
        for s in ["sum(susp(2,cyc(3)),dual)", "cyc(-4,2)", "dual(Q[x,y])", "koszul(Q[x,y],3)", "susp(-1,lcoh(Q[c]))", "trunc(4)", "sum()", "free(3)", "tate"] {
            let a = parse_atom(s).unwrap();
            assert_eq!(parse_atom(&a.to_string()).unwrap(), a, "{s}");
        }
        assert_eq!(parse_atom("sum(susp(2, cyc(3)), dual)").unwrap().to_string(), "sum(susp(2,cyc(3)),dual)");
    }

    #[test]
    fn objects_round_trip() {
        for s in [
            "f(1,(cyc(2)))",
            "a(G,(dual(Q)))",
            "b(G,e[(1)^3],1)",
            "prod(f(circle(1,-2),(cyc(2,1))),a(1,(koszul(Q[x,y],2))),b(1,0,2))",
            "prod()",
            "f(C3,(dual))",
        ] {
            let d = parse_object(s).unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_object("prod(f(1,(cyc(2))),\n  g(1))") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 4)),
            other => panic!("{other:?}"),
        }
        assert!(parse_atom("sum(dual").is_err());
    }

    #[test]
    fn polynomials_and_forms() {
        let p = parse_poly("x^2 - 3/2 x*y + y", &["x", "y"]).unwrap();
        assert_eq!(p.coeff(&Mono(vec![1, 1])), Q::new((-3).into(), 2.into()));
        let f = parse_forms("x, x+y, 2x-4y", &["x", "y"]).unwrap();
        assert_eq!(f[2].0, vec![1, -2]);
        assert!(parse_forms("x^2", &["x", "y"]).is_err());
        assert_eq!(parse_window("-10:0").unwrap(), (-10, 0));
    }
}
