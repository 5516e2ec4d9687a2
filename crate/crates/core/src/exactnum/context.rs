use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Precision levels (in bits) tried, in order, when a sign has to be
/// certified by interval evaluation.
pub const PRECISION_LEVELS: [u32; 3] = [64, 256, 1024];

/// Minimum number of significant digits accepted for an opaque generator.
pub const MIN_OPAQUE_DIGITS: usize = 64;

pub type Context = Arc<GeneratorContext>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The value `p + q * sqrt(d)`.
    Quadratic {
        d: BigInt,
        p: BigRational,
        q: BigRational,
    },
    /// A real number known only through a decimal approximation; the true
    /// value lies within `radius` of `approx`.
    Opaque {
        approx: BigRational,
        radius: BigRational,
        digits: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn quadratic(name: &str, d: i64, p: BigRational, q: BigRational) -> Self {
        Generator {
            name: name.to_string(),
            kind: GeneratorKind::Quadratic {
                d: BigInt::from(d),
                p,
                q,
            },
        }
    }

    /// An opaque generator from a decimal literal such as `"1.4142..."`.
    pub fn opaque(name: &str, decimal: &str) -> Result<Self> {
        let (approx, digits, frac_digits) = parse_decimal(decimal)?;
        let radius = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(frac_digits as u32));
        Ok(Generator {
            name: name.to_string(),
            kind: GeneratorKind::Opaque {
                approx,
                radius,
                digits,
            },
        })
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.kind, GeneratorKind::Quadratic { .. })
    }
}

/// Returns (value, significant digits, fractional digits).
fn parse_decimal(s: &str) -> Result<(BigRational, usize, usize)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a decimal literal: {s:?}")));
    }
    let all: String = format!("{int_part}{frac_part}");
    let significant = all.trim_start_matches('0').len();
    let mut numer: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
    };
    if neg {
        numer = -numer;
    }
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok((BigRational::new(numer, denom), significant, frac_part.len()))
}

/// The irrational generators over which every scalar of a computation is a
/// rational linear combination.
pub struct GeneratorContext {
    generators: Vec<Generator>,
    independent: bool,
    quadratic: Option<usize>,
    enclosures: [OnceLock<Vec<(BigRational, BigRational)>>; 3],
}

impl fmt::Debug for GeneratorContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorContext")
            .field("generators", &self.generators)
            .field("independent", &self.independent)
            .finish()
    }
}

impl PartialEq for GeneratorContext {
    fn eq(&self, other: &Self) -> bool {
        self.independent == other.independent && self.generators == other.generators
    }
}

impl Eq for GeneratorContext {}

impl GeneratorContext {
    /// Validates and freezes a generator set. `independent` asserts that
    /// `{1} ∪ generators` is linearly independent over the rationals, which
    /// makes coefficient-wise equality exact.
    pub fn new(generators: Vec<Generator>, independent: bool) -> Result<Context> {
        let mut quadratic = None;
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidContext(format!("bad generator name {:?}", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidContext(format!("duplicate generator {:?}", g.name)));
            }
            match &g.kind {
                GeneratorKind::Quadratic { d, q, .. } => {
                    if quadratic.is_some() {
                        return Err(Error::InvalidContext(
                            "at most one quadratic generator per context".into(),
                        ));
                    }
                    if !d.is_positive() {
                        return Err(Error::InvalidContext(format!("D = {d} is not positive")));
                    }
                    let r = d.sqrt();
                    if &r * &r == *d {
                        return Err(Error::InvalidContext(format!("D = {d} is a perfect square")));
                    }
                    if q.is_zero() {
                        return Err(Error::InvalidContext(format!(
                            "generator {:?} is rational (q = 0)",
                            g.name
                        )));
                    }
                    quadratic = Some(i);
                }
                GeneratorKind::Opaque {
                    approx,
                    radius,
                    digits,
                } => {
                    if *digits < MIN_OPAQUE_DIGITS {
                        return Err(Error::InvalidContext(format!(
                            "opaque generator {:?} has {digits} significant digits, need {MIN_OPAQUE_DIGITS}",
                            g.name
                        )));
                    }
                    if approx.abs() <= *radius {
                        return Err(Error::InvalidContext(format!(
                            "opaque generator {:?} is not separated from zero",
                            g.name
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(GeneratorContext {
            generators,
            independent,
            quadratic,
            enclosures: Default::default(),
        }))
    }

    /// A context without generators: plain rational arithmetic.
    pub fn rational() -> Context {
        Self::new(Vec::new(), true).expect("empty context is valid")
    }

    /// `tau = (1 + sqrt 5)/2`.
    pub fn golden() -> Context {
        let half = BigRational::new(1.into(), 2.into());
        Self::new(vec![Generator::quadratic("tau", 5, half.clone(), half)], true)
            .expect("golden context is valid")
    }

    /// A context with the single generator `name = sqrt(d)`.
    pub fn sqrt(name: &str, d: i64) -> Result<Context> {
        Self::new(
            vec![Generator::quadratic(name, d, BigRational::zero(), BigRational::one())],
            true,
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Number of coefficients of a number in this context (unit + generators).
    pub fn width(&self) -> usize {
        self.generators.len() + 1
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    /// Coefficient index (1-based, 0 is the unit) of the quadratic generator.
    pub fn quadratic_slot(&self) -> Option<usize> {
        self.quadratic.map(|i| i + 1)
    }

    pub(crate) fn quadratic_data(&self) -> Option<(&BigInt, &BigRational, &BigRational)> {
        self.quadratic.map(|i| match &self.generators[i].kind {
            GeneratorKind::Quadratic { d, p, q } => (d, p, q),
            GeneratorKind::Opaque { .. } => unreachable!("quadratic index points at opaque"),
        })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Slots (1-based) holding opaque generators.
    pub(crate) fn is_opaque_slot(&self, slot: usize) -> bool {
        slot > 0 && !self.generators[slot - 1].is_quadratic()
    }

    /// Rational enclosures of every generator at one of the cached precision
    /// levels.
    pub(crate) fn cached_enclosures(&self, level: usize) -> &[(BigRational, BigRational)] {
        self.enclosures[level].get_or_init(|| self.enclosures_at(PRECISION_LEVELS[level]))
    }

    pub(crate) fn enclosures_at(&self, bits: u32) -> Vec<(BigRational, BigRational)> {
        self.generators.iter().map(|g| enclose(&g.kind, bits)).collect()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn dyadic(numer: BigInt, bits: u32) -> BigRational {
    BigRational::new(numer, BigInt::one() << bits)
}

/// Outward-rounded enclosure of `sqrt(d)` with `bits` fractional bits.
pub(crate) fn sqrt_enclosure(d: &BigInt, bits: u32) -> (BigRational, BigRational) {
    let s = (d << (2 * bits)).sqrt();
    (dyadic(s.clone(), bits), dyadic(s + 1, bits))
}

fn enclose(kind: &GeneratorKind, bits: u32) -> (BigRational, BigRational) {
    match kind {
        GeneratorKind::Quadratic { d, p, q } => {
            let (lo, hi) = sqrt_enclosure(d, bits);
            let a = p + q * lo;
            let b = p + q * hi;
            if q.is_positive() {
                (a, b)
            } else {
                (b, a)
            }
        }
        GeneratorKind::Opaque { approx, radius, .. } => {
            let scale = BigRational::from_integer(BigInt::one() << bits);
            let lo = ((approx - radius) * &scale).floor().to_integer();
            let hi = ((approx + radius) * &scale).ceil().to_integer();
            (dyadic(lo, bits), dyadic(hi, bits))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_quadratic_generators() {
        let h = BigRational::new(1.into(), 2.into());
        let err = GeneratorContext::new(
            vec![
                Generator::quadratic("a", 5, h.clone(), h.clone()),
                Generator::quadratic("b", 5, BigRational::zero(), BigRational::one()),
            ],
            true,
        );
        assert!(matches!(err, Err(Error::InvalidContext(_))));
    }

    #[test]
    fn rejects_square_discriminant_and_duplicate_names() {
        assert!(GeneratorContext::sqrt("r", 9).is_err());
        let g = Generator::opaque("x", &format!("1.{}", "4".repeat(70))).unwrap();
        assert!(GeneratorContext::new(vec![g.clone(), g], true).is_err());
    }

    #[test]
    fn opaque_needs_enough_digits() {
        let g = Generator::opaque("x", "1.41421356").unwrap();
        assert!(GeneratorContext::new(vec![g], true).is_err());
    }

    #[test]
    fn enclosures_contain_value() {
        let ctx = GeneratorContext::golden();
        for bits in [64, 256] {
            let (lo, hi) = &ctx.enclosures_at(bits)[0];
            // tau^2 - tau - 1 changes sign across [lo, hi]
            let f = |x: &BigRational| x * x - x - BigRational::one();
            assert!(f(lo).is_negative() && f(hi).is_positive());
        }
    }
}
