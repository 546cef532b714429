//! Parsers for the ASCII notation produced by the renderers.
//!
//! ```text
//! pi1    := "1" | atom ("*" atom)*          atom := "Z" | "Z/" q
//! spec   := "pi1 =" pi1 "; b2 =" n "; sigma-f =" ("trivial" | "nontrivial")
//! term   := summand (" v " summand)*        summand := "S^k" | "P^k(q)" | "SCP^2" | "*"
//! gauge  := [lhs "="] "G_t(" base ")" (" x " factor)*
//! lhs    := "G_t(M)" [" x (O^2G)^{" ("2d" | 2d-value) "}"]
//! factor := "O^kG" ["{q}"] | "OG" | "(O^2G)^{" [c "+"] "2d}"
//! matrix := "[" [row ("," row)*] "]"        row := "[" [int ("," int)*] "]"
//! group  := "SU(n)" | "Sp(n)" | "G2" | "G_2"
//! ```
//! Whitespace is insignificant everywhere.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{ArithError, PrimePower};
use crate::classifier::{ClassifyError, LieGroup};
use crate::homology::IntMatrix;
use crate::manifold::{CyclicFactor, ManifoldSpec, Pi1Descriptor};
use crate::terms::{normalize, GaugeBase, GaugeExpr, LoopFactor, SpaceTerm, Stabilization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse {what} from {input:?}")]
    Syntax { what: &'static str, input: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] ClassifyError),
    #[error("stabilized gauge expression is inconsistent: {0}")]
    Stabilization(&'static str),
}

fn syntax(what: &'static str, input: &str) -> ParseError {
    ParseError::Syntax {
        what,
        input: input.to_string(),
    }
}

fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_uint<T: std::str::FromStr>(s: &str, what: &'static str) -> Result<T, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(what, s));
    }
    s.parse().map_err(|_| syntax(what, s))
}

pub fn parse_pi1(input: &str) -> Result<Pi1Descriptor, ParseError> {
    let s = strip_ws(input);
    if s == "1" {
        return Ok(Pi1Descriptor::trivial());
    }
    let mut free = 0;
    let mut cyclic = Vec::new();
    for atom in s.split('*') {
        match atom.strip_prefix('Z') {
            Some("") => free += 1,
            Some(rest) => {
                let q: u64 = parse_uint(
                    rest.strip_prefix('/').ok_or_else(|| syntax("pi1 atom", atom))?,
                    "group order",
                )?;
                cyclic.push(CyclicFactor::from_order(q)?);
            }
            None => return Err(syntax("pi1 atom", atom)),
        }
    }
    Ok(Pi1Descriptor::new(free, cyclic))
}

/// Reads back the `Display` form of a [`ManifoldSpec`]. No validation.
pub fn parse_spec(input: &str) -> Result<ManifoldSpec, ParseError> {
    let s = strip_ws(input);
    let mut fields = s.split(';');
    let mut field = |key: &'static str| {
        fields
            .next()
            .and_then(|f| f.strip_prefix(key))
            .and_then(|f| f.strip_prefix('='))
            .ok_or_else(|| syntax("manifold description", input))
    };
    let pi1 = parse_pi1(field("pi1")?)?;
    let b2 = parse_uint(field("b2")?, "b2")?;
    let sigma_f_trivial = match field("sigma-f")? {
        "trivial" => true,
        "nontrivial" => false,
        other => return Err(syntax("sigma-f flag", other)),
    };
    if fields.next().is_some() {
        return Err(syntax("manifold description", input));
    }
    Ok(ManifoldSpec::new(pi1, b2, sigma_f_trivial))
}

fn parse_summand(s: &str) -> Result<SpaceTerm, ParseError> {
    if s == "*" {
        return Ok(SpaceTerm::Point);
    }
    if s == "SCP^2" {
        return Ok(SpaceTerm::SuspCp2);
    }
    if let Some(k) = s.strip_prefix("S^") {
        let dim: u32 = parse_uint(k, "sphere dimension")?;
        if dim == 0 {
            return Err(syntax("sphere dimension", s));
        }
        return Ok(SpaceTerm::Sphere(dim));
    }
    if let Some(rest) = s.strip_prefix("P^") {
        let (k, q) = rest.split_once('(').ok_or_else(|| syntax("Moore space", s))?;
        let q = q.strip_suffix(')').ok_or_else(|| syntax("Moore space", s))?;
        let dim: u32 = parse_uint(k, "Moore space dimension")?;
        if dim < 2 {
            return Err(syntax("Moore space dimension", s));
        }
        let modulus = PrimePower::from_value(parse_uint(q, "Moore space modulus")?)?;
        return Ok(SpaceTerm::Moore { dim, modulus });
    }
    Err(syntax("wedge summand", s))
}

/// Parses a wedge of summands separated by `v`, returning its normal form.
pub fn parse_term(input: &str) -> Result<SpaceTerm, ParseError> {
    let s = strip_ws(input);
    let parts = s.split('v').map(parse_summand).collect::<Result<Vec<_>, _>>()?;
    Ok(normalize(&SpaceTerm::Wedge(parts)))
}

fn parse_int(s: &str, what: &'static str) -> Result<i64, ParseError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    parse_uint::<u64>(digits, what)?;
    s.parse().map_err(|_| syntax(what, s))
}

// "G_t(BASE)" -> (t, BASE)
fn parse_gauge_head(s: &str) -> Result<(i64, &str), ParseError> {
    let rest = s.strip_prefix("G_").ok_or_else(|| syntax("gauge head", s))?;
    let (t, base) = rest.split_once('(').ok_or_else(|| syntax("gauge head", s))?;
    let base = base.strip_suffix(')').ok_or_else(|| syntax("gauge head", s))?;
    Ok((parse_int(t, "bundle class")?, base))
}

fn parse_symbolic_count(s: &str) -> Option<usize> {
    if s == "2d" {
        return Some(0);
    }
    s.strip_suffix("+2d")?.parse().ok()
}

pub fn parse_gauge(input: &str) -> Result<GaugeExpr, ParseError> {
    let s = strip_ws(input);
    let (lhs, rhs) = match s.split_once('=') {
        Some((l, r)) => (Some(l), r),
        None => (None, s.as_str()),
    };
    let mut pieces = rhs.split('x');
    let head = pieces.next().unwrap_or_default();
    let (t, base) = parse_gauge_head(head)?;
    let base = match base {
        "S^4" => GaugeBase::S4,
        "CP^2" => GaugeBase::Cp2,
        _ => return Err(syntax("gauge base", base)),
    };

    let mut factors = Vec::new();
    let mut symbolic_power = None;
    for piece in pieces {
        if let Some(exp) = piece.strip_prefix("(O^2G)^{").and_then(|r| r.strip_suffix('}')) {
            let c = parse_symbolic_count(exp).ok_or_else(|| syntax("symbolic power", piece))?;
            if symbolic_power.replace(c).is_some() {
                return Err(ParseError::Stabilization("repeated symbolic power"));
            }
            factors.extend(std::iter::repeat_n(LoopFactor::plain(2), c));
            continue;
        }
        let (body, modulus) = match piece.split_once('{') {
            Some((b, q)) => {
                let q = q.strip_suffix('}').ok_or_else(|| syntax("loop factor", piece))?;
                (b, Some(PrimePower::from_value(parse_uint(q, "loop factor modulus")?)?))
            }
            None => (piece, None),
        };
        let order = match body {
            "OG" => 1,
            _ => {
                let k = body
                    .strip_prefix("O^")
                    .and_then(|r| r.strip_suffix('G'))
                    .ok_or_else(|| syntax("loop factor", piece))?;
                parse_uint(k, "loop order")?
            }
        };
        if !(1..=3).contains(&order) {
            return Err(syntax("loop order", piece));
        }
        factors.push(LoopFactor {
            loop_order: order,
            modulus,
        });
    }

    let stabilization = match lhs {
        None => Stabilization::Fixed(0),
        Some(l) => {
            let (head, power) = match l.split_once('x') {
                Some((h, p)) => (h, Some(p)),
                None => (l, None),
            };
            let (lt, m) = parse_gauge_head(head)?;
            if m != "M" || lt != t {
                return Err(ParseError::Stabilization("left side must be G_t(M) with the same t"));
            }
            let Some(power) = power else {
                return if symbolic_power.is_some() {
                    Err(ParseError::Stabilization("symbolic power appears on one side only"))
                } else {
                    Ok(GaugeExpr::new(base, t, factors, Stabilization::Fixed(0)))
                };
            };
            let exp = power
                .strip_prefix("(O^2G)^{")
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| syntax("stabilized left side", l))?;
            if exp == "2d" {
                Stabilization::Symbolic
            } else {
                let twice: u32 = parse_uint(exp, "stabilization exponent")?;
                if !twice.is_multiple_of(2) || twice == 0 {
                    return Err(ParseError::Stabilization("exponent must be a positive even number"));
                }
                Stabilization::Fixed(twice / 2)
            }
        }
    };
    if (stabilization == Stabilization::Symbolic) != symbolic_power.is_some() {
        return Err(ParseError::Stabilization("symbolic power appears on one side only"));
    }
    Ok(GaugeExpr::new(base, t, factors, stabilization))
}

pub fn parse_matrix(input: &str) -> Result<IntMatrix, ParseError> {
    let s = strip_ws(input);
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| syntax("matrix", input))?;
    if inner.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let body = inner
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| syntax("matrix", input))?;
    let mut rows = Vec::new();
    for row in body.split("],[") {
        let entries = if row.is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|e| e.parse::<BigInt>().map_err(|_| syntax("matrix entry", e)))
                .collect::<Result<Vec<_>, _>>()?
        };
        rows.push(entries);
    }
    IntMatrix::from_rows(rows).map_err(|_| syntax("rectangular matrix", input))
}

pub fn parse_group(input: &str) -> Result<LieGroup, ParseError> {
    let s = strip_ws(input);
    if s == "G2" || s == "G_2" {
        return Ok(LieGroup::G2);
    }
    let arg = |prefix: &str| -> Option<Result<u32, ParseError>> {
        let n = s.strip_prefix(prefix)?.strip_suffix(')')?;
        Some(parse_uint(n, "group rank"))
    };
    if let Some(n) = arg("SU(") {
        return Ok(LieGroup::su(n?)?);
    }
    if let Some(n) = arg("Sp(") {
        return Ok(LieGroup::sp(n?)?);
    }
    Err(syntax("Lie group", input))
}

pub fn parse_primes(input: &str) -> Result<Vec<u64>, ParseError> {
    let s = strip_ws(input);
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| parse_uint(p, "prime")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::wedge;
    use proptest::prelude::*;

    #[test]
    fn pi1_grammar() {
        let g = parse_pi1(" Z * Z * Z/9 ").unwrap();
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.to_string(), "Z*Z*Z/9");
        assert_eq!(parse_pi1("Z/27*Z/5").unwrap().to_string(), "Z/5*Z/27");
        assert_eq!(parse_pi1("1").unwrap(), Pi1Descriptor::trivial());
        assert!(matches!(
            parse_pi1("Z/6"),
            Err(ParseError::Arith(ArithError::NotPrimePower(6)))
        ));
        assert!(parse_pi1("Z/").is_err());
        assert!(parse_pi1("Q").is_err());
        assert!(parse_pi1("").is_err());
        // Z/2 parses; rejecting the even prime is validation's job.
        assert_eq!(parse_pi1("Z/2").unwrap().cyclic_factors()[0].prime(), 2);
    }

    #[test]
    fn spec_grammar() {
        let s = parse_spec("pi1 = Z*Z/3; b2 = 2; sigma-f = nontrivial").unwrap();
        assert_eq!(s.pi1.free_rank(), 1);
        assert_eq!(s.b2, 2);
        assert!(!s.sigma_f_trivial);
        assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
        assert!(parse_spec("pi1 = 1; b2 = 0").is_err());
        assert!(parse_spec("pi1 = 1; b2 = 0; sigma-f = maybe").is_err());
        assert!(parse_spec("pi1 = 1; b2 = 0; sigma-f = trivial; x").is_err());
        assert!(parse_spec("b2 = 0; pi1 = 1; sigma-f = trivial").is_err());
    }

    #[test]
    fn term_grammar() {
        let t = parse_term("S^3 v P^3(9) v S^5").unwrap();
        assert_eq!(t.to_string(), "S^5 v S^3 v P^3(9)");
        assert_eq!(parse_term("*").unwrap(), SpaceTerm::Point);
        assert_eq!(parse_term("SCP^2 v *").unwrap(), SpaceTerm::SuspCp2);
        assert!(parse_term("P^3(6)").is_err());
        assert!(parse_term("P^1(3)").is_err());
        assert!(parse_term("S^0").is_err());
        assert!(parse_term("T^2").is_err());
    }

    #[test]
    fn gauge_grammar() {
        let g = parse_gauge("G_2(S^4) x O^3G x O^1G").unwrap();
        assert_eq!(g.to_string(), "G_2(S^4) x O^3G x O^1G");
        assert_eq!(parse_gauge("G_-3(CP^2) x OG").unwrap().to_string(), "G_-3(CP^2) x O^1G");
        assert_eq!(
            parse_gauge("G_1(M) = G_1(S^4) x O^2G").unwrap(),
            parse_gauge("G_1(S^4) x O^2G").unwrap()
        );
        assert!(parse_gauge("G_1(M) = G_1(S^4) x (O^2G)^{2d}").is_err());
        assert!(parse_gauge("G_2(M) = G_1(S^4)").is_err());
        let text = "G_5(M) x (O^2G)^{2d} = G_5(S^4) x O^3G x O^3G{3} x (O^2G)^{1+2d} x O^2G{3} x O^1G";
        assert_eq!(parse_gauge(text).unwrap().to_string(), text);
        let fixed = "G_0(M) x (O^2G)^{2} = G_0(S^4) x O^2G x O^2G";
        assert_eq!(parse_gauge(fixed).unwrap().stabilization, Stabilization::Fixed(1));
        assert!(parse_gauge("G_1(S^4) x (O^2G)^{2d}").is_err());
        assert!(parse_gauge("G_1(M) x (O^2G)^{3} = G_1(S^4)").is_err());
        assert!(parse_gauge("G_1(M) x (O^2G)^{2} = G_2(S^4)").is_err());
        assert!(parse_gauge("G_1(S^5)").is_err());
        assert!(parse_gauge("G_1(S^4) x O^4G").is_err());
    }

    #[test]
    fn matrix_grammar() {
        let m = parse_matrix("[[1, 0], [0, -12345678901234567890123]]").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.to_string(), "[[1,0],[0,-12345678901234567890123]]");
        assert_eq!(parse_matrix("[]").unwrap(), IntMatrix::zeros(0, 0));
        assert_eq!(parse_matrix("[[],[]]").unwrap(), IntMatrix::zeros(2, 0));
        assert!(parse_matrix("[[1,2],[3]]").is_err());
        assert!(parse_matrix("[[1,a]]").is_err());
        assert!(parse_matrix("1").is_err());
    }

    #[test]
    fn group_grammar() {
        assert_eq!(parse_group("SU(2)").unwrap(), LieGroup::SU(2));
        assert_eq!(parse_group("Sp( 3 )").unwrap(), LieGroup::Sp(3));
        assert_eq!(parse_group("G_2").unwrap(), LieGroup::G2);
        assert!(parse_group("SU(1)").is_err());
        assert!(parse_group("SO(3)").is_err());
        assert_eq!(parse_primes("2, 3,5").unwrap(), vec![2, 3, 5]);
        assert!(parse_primes("2,,3").is_err());
    }

    fn arb_summand() -> impl Strategy<Value = SpaceTerm> {
        let pp =
            prop::sample::select(vec![3u64, 5, 7, 9, 25, 27, 4, 8]).prop_map(|q| PrimePower::from_value(q).unwrap());
        prop_oneof![
            Just(SpaceTerm::Point),
            Just(SpaceTerm::SuspCp2),
            (1u32..7).prop_map(SpaceTerm::Sphere),
            (2u32..6, pp).prop_map(|(dim, modulus)| SpaceTerm::Moore { dim, modulus }),
        ]
    }

    fn arb_term() -> impl Strategy<Value = SpaceTerm> {
        arb_summand().prop_recursive(3, 24, 6, |inner| {
            proptest::collection::vec(inner, 0..6).prop_map(SpaceTerm::Wedge)
        })
    }

    proptest! {
        #[test]
        fn term_round_trip(t in arb_term()) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), normalize(&t));
        }

        #[test]
        fn normalize_is_idempotent(t in arb_term()) {
            let n = normalize(&t);
            prop_assert_eq!(normalize(&n), n);
        }

        #[test]
        fn normalize_ignores_order(parts in proptest::collection::vec(arb_summand(), 0..8), seed in any::<u64>()) {
            let mut shuffled = parts.clone();
            // Deterministic rotation plus reversal from the seed.
            let k = (seed as usize) % shuffled.len().max(1);
            shuffled.rotate_left(k);
            if seed % 2 == 0 { shuffled.reverse(); }
            prop_assert_eq!(wedge(parts), wedge(shuffled));
        }
    }
}
