//! Affine and quadratic forms in the summation indices.
//!
//! Sum specifications keep their exponents symbolic: Pochhammer argument
//! exponents and lengths are integer affine forms, and the power of `q`
//! multiplying each term is a quadratic form with rational coefficients.
//! Rational coefficients are required because exponents like `k*(k+1)/2`
//! have half-integer forms; whether the value is an integer is checked
//! exactly at every lattice point instead of being assumed.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{rat, Rat};

/// `constant + sum_i coeffs[i] * k_i` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl AffineForm {
    pub fn new(constant: i64, coeffs: Vec<i64>) -> Self {
        AffineForm { constant, coeffs }
    }

    pub fn constant_form(constant: i64) -> Self {
        AffineForm { constant, coeffs: Vec::new() }
    }

    /// One-variable form `a*k + c`.
    pub fn linear1(a: i64, c: i64) -> Self {
        AffineForm { constant: c, coeffs: vec![a] }
    }

    /// Coefficient 1 on index `i` (zero-based) in a `dim`-index form.
    pub fn var(i: usize, dim: usize) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[i] = 1;
        AffineForm { constant: 0, coeffs }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        debug_assert!(self.coeffs.len() <= point.len(), "point has too few coordinates");
        self.constant
            + self
                .coeffs
                .iter()
                .zip(point)
                .map(|(c, k)| c * k)
                .sum::<i64>()
    }

    /// Multiplies every coefficient, matching the substitution `q -> q^b`
    /// when the form is an exponent of `q`.
    pub fn scale(&self, b: i64) -> Self {
        AffineForm {
            constant: self.constant * b,
            coeffs: self.coeffs.iter().map(|c| c * b).collect(),
        }
    }

    /// One-variable reindexing `k = s*j + t`.
    pub fn subst1(&self, s: i64, t: i64) -> Self {
        assert!(self.coeffs.len() <= 1, "subst1 applies to one-variable forms");
        let a = self.coeffs.first().copied().unwrap_or(0);
        AffineForm { constant: self.constant + a * t, coeffs: vec![a * s] }
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let name = if self.coeffs.len() == 1 { "k".to_string() } else { format!("k{}", i + 1) };
            if wrote {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            if c.abs() == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{}*{}", c.abs(), name)?;
            }
            wrote = true;
        }
        if self.constant != 0 || !wrote {
            if wrote {
                write!(f, " {} {}", if self.constant < 0 { "-" } else { "+" }, self.constant.abs())?;
            } else {
                write!(f, "{}", self.constant)?;
            }
        }
        Ok(())
    }
}

/// `k^T A k + L.k + c` with rational coefficients and `A` symmetric.
///
/// The constructor also prepares an integer representation over a common
/// denominator so point evaluation is pure machine arithmetic; the exact
/// check `denominator | numerator` decides integrality at each point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuadraticFormRepr", into = "QuadraticFormRepr")]
pub struct QuadraticForm {
    quad: Vec<Vec<Rat>>,
    linear: Vec<Rat>,
    constant: Rat,
    denom: i64,
    iquad: Vec<Vec<i64>>,
    ilinear: Vec<i64>,
    iconst: i64,
}

impl QuadraticForm {
    /// Builds a form; `quad` is symmetrized so callers may fill either
    /// triangle (the value `quad[i][j] + quad[j][i]` multiplies `k_i k_j`).
    pub fn new(quad: Vec<Vec<Rat>>, linear: Vec<Rat>, constant: Rat) -> Self {
        let dim = linear.len();
        assert_eq!(quad.len(), dim, "quadratic matrix must be dim x dim");
        for row in &quad {
            assert_eq!(row.len(), dim, "quadratic matrix must be dim x dim");
        }
        let mut sym = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                sym[i][j] = (&quad[i][j] + &quad[j][i]) / rat(2);
            }
        }
        let mut denom: i64 = 1;
        let mut absorb = |r: &Rat| {
            let d = r.denom().to_i64().expect("form denominator fits i64");
            denom = denom.lcm(&d);
        };
        sym.iter().flatten().for_each(&mut absorb);
        linear.iter().for_each(&mut absorb);
        absorb(&constant);
        let to_int = |r: &Rat| -> i64 {
            let scaled = r * rat(denom);
            debug_assert!(scaled.denom().to_i64() == Some(1));
            scaled.numer().to_i64().expect("scaled form coefficient fits i64")
        };
        let iquad = sym.iter().map(|row| row.iter().map(to_int).collect()).collect();
        let ilinear = linear.iter().map(to_int).collect();
        let iconst = to_int(&constant);
        QuadraticForm { quad: sym, linear, constant, denom, iquad, ilinear, iconst }
    }

    pub fn zero(dim: usize) -> Self {
        QuadraticForm::new(
            vec![vec![Rat::zero(); dim]; dim],
            vec![Rat::zero(); dim],
            Rat::zero(),
        )
    }

    /// One-variable polynomial `a*k^2 + b*k + c`.
    pub fn poly1(a: Rat, b: Rat, c: Rat) -> Self {
        QuadraticForm::new(vec![vec![a]], vec![b], c)
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn is_zero(&self) -> bool {
        self.quad.iter().flatten().all(Rat::is_zero)
            && self.linear.iter().all(Rat::is_zero)
            && self.constant.is_zero()
    }

    /// Exact value at a lattice point; `Err` carries the non-integer value.
    pub fn eval(&self, point: &[i64]) -> Result<i64, Rat> {
        let dim = self.dim();
        debug_assert!(point.len() >= dim);
        let mut acc: i128 = self.iconst as i128;
        for i in 0..dim {
            let ki = point[i] as i128;
            acc += self.ilinear[i] as i128 * ki;
            for j in 0..dim {
                acc += self.iquad[i][j] as i128 * ki * point[j] as i128;
            }
        }
        let d = self.denom as i128;
        if acc.rem_euclid(d) != 0 {
            return Err(Rat::new(
                num_bigint::BigInt::from(acc),
                num_bigint::BigInt::from(self.denom),
            ));
        }
        let v = acc / d;
        Ok(i64::try_from(v).expect("q-exponent fits i64"))
    }

    /// Sylvester test on the quadratic part: all leading principal minors of
    /// the symmetrized matrix must be strictly positive.
    pub fn quadratic_part_positive_definite(&self) -> bool {
        let dim = self.dim();
        (1..=dim).all(|m| det(&self.quad, m).is_positive())
    }

    /// Substitutes `q -> q^b`: the whole exponent scales by `b`.
    pub fn rebase(&self, b: i64) -> Self {
        let s = rat(b);
        QuadraticForm::new(
            self.quad.iter().map(|row| row.iter().map(|x| x * &s).collect()).collect(),
            self.linear.iter().map(|x| x * &s).collect(),
            &self.constant * &s,
        )
    }

    /// One-variable reindexing `k = s*j + t`.
    pub fn subst1(&self, s: i64, t: i64) -> Self {
        assert_eq!(self.dim(), 1, "subst1 applies to one-variable forms");
        let a = &self.quad[0][0];
        let b = &self.linear[0];
        let c = &self.constant;
        let (s, t) = (rat(s), rat(t));
        QuadraticForm::poly1(
            a * &s * &s,
            rat(2) * a * &s * &t + b * &s,
            a * &t * &t + b * &t + c,
        )
    }
}

/// Determinant of the leading `m x m` block, by cofactor expansion. The
/// matrices here are at most 4x4, so simplicity wins over pivoting.
fn det(m: &[Vec<Rat>], size: usize) -> Rat {
    if size == 0 {
        return rat(1);
    }
    let idx: Vec<usize> = (0..size).collect();
    det_rec(m, &idx, &idx)
}

fn det_rec(m: &[Vec<Rat>], rows: &[usize], cols: &[usize]) -> Rat {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Rat::zero();
    let rest: Vec<usize> = rows[1..].to_vec();
    for (i, &c) in cols.iter().enumerate() {
        if m[rows[0]][c].is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &rest, &sub_cols);
        let signed = if i % 2 == 0 { minor } else { -minor };
        acc += &m[rows[0]][c] * signed;
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct QuadraticFormRepr {
    quad: Vec<Vec<String>>,
    linear: Vec<String>,
    constant: String,
}

impl From<QuadraticForm> for QuadraticFormRepr {
    fn from(f: QuadraticForm) -> Self {
        use crate::coeff::rat_to_string;
        QuadraticFormRepr {
            quad: f.quad.iter().map(|r| r.iter().map(rat_to_string).collect()).collect(),
            linear: f.linear.iter().map(rat_to_string).collect(),
            constant: rat_to_string(&f.constant),
        }
    }
}

impl TryFrom<QuadraticFormRepr> for QuadraticForm {
    type Error = String;

    fn try_from(r: QuadraticFormRepr) -> Result<Self, String> {
        use crate::coeff::rat_from_str;
        let parse = |s: &String| rat_from_str(s).ok_or_else(|| format!("bad rational {s:?}"));
        let quad = r
            .quad
            .iter()
            .map(|row| row.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let linear = r.linear.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let constant = parse(&r.constant)?;
        if quad.len() != linear.len() || quad.iter().any(|row| row.len() != linear.len()) {
            return Err("quadratic matrix shape does not match linear part".into());
        }
        Ok(QuadraticForm::new(quad, linear, constant))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::frac;

    #[test]
    fn affine_eval_and_subst() {
        let f = AffineForm::new(-3, vec![2, 1]);
        assert_eq!(f.eval(&[4, 5]), 10);
        let g = AffineForm::linear1(2, 1);
        assert_eq!(g.subst1(3, -1).eval(&[2]), g.eval(&[3 * 2 - 1]));
        assert_eq!(g.scale(5).eval(&[7]), 5 * g.eval(&[7]));
    }

    #[test]
    fn affine_display() {
        assert_eq!(AffineForm::linear1(2, -1).to_string(), "2*k - 1");
        assert_eq!(AffineForm::new(0, vec![1, -1]).to_string(), "k1 - k2");
        assert_eq!(AffineForm::constant_form(0).to_string(), "0");
    }

    #[test]
    fn triangular_numbers_are_integral() {
        // k(k-1)/2
        let f = QuadraticForm::poly1(frac(1, 2), frac(-1, 2), rat(0));
        for k in -6..=6 {
            assert_eq!(f.eval(&[k]), Ok(k * (k - 1) / 2));
        }
    }

    #[test]
    fn non_integral_points_are_rejected() {
        // k^2/2 is non-integral at odd k
        let f = QuadraticForm::poly1(frac(1, 2), rat(0), rat(0));
        assert_eq!(f.eval(&[2]), Ok(2));
        assert!(f.eval(&[3]).is_err());
        assert_eq!(f.eval(&[3]).unwrap_err(), frac(9, 2));
    }

    #[test]
    fn cross_term_convention() {
        // quad[0][1] + quad[1][0] multiplies k1*k2: fill one triangle
        let f = QuadraticForm::new(
            vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]],
            vec![rat(0), rat(0)],
            rat(0),
        );
        // k1^2 + 2 k1 k2 + k2^2 = (k1 + k2)^2
        assert_eq!(f.eval(&[3, -1]), Ok(4));
        assert_eq!(f.eval(&[2, 2]), Ok(16));
    }

    #[test]
    fn positive_definiteness() {
        let pd = QuadraticForm::new(
            vec![vec![rat(2), rat(1)], vec![rat(0), rat(1)]],
            vec![rat(0), rat(0)],
            rat(0),
        );
        assert!(pd.quadratic_part_positive_definite());
        // (k1 + k2)^2 alone is only semidefinite
        let psd = QuadraticForm::new(
            vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]],
            vec![rat(0), rat(0)],
            rat(0),
        );
        assert!(!psd.quadratic_part_positive_definite());
        let indef = QuadraticForm::poly1(rat(-1), rat(0), rat(0));
        assert!(!indef.quadratic_part_positive_definite());
    }

    #[test]
    fn subst_and_rebase_agree_with_direct_eval() {
        let f = QuadraticForm::poly1(frac(5, 2), frac(-3, 2), rat(1));
        let g = f.subst1(2, 1); // k = 2j + 1
        for j in -4..=4 {
            assert_eq!(g.eval(&[j]), f.eval(&[2 * j + 1]));
        }
        let h = f.rebase(3);
        for k in -4..=4 {
            assert_eq!(h.eval(&[k]), f.eval(&[k]).map(|v| 3 * v));
        }
    }

    #[test]
    fn serde_round_trip() {
        let f = QuadraticForm::new(
            vec![vec![rat(1), frac(1, 2)], vec![frac(1, 2), rat(2)]],
            vec![frac(-3, 2), rat(0)],
            rat(7),
        );
        let text = ron::to_string(&f).unwrap();
        let back: QuadraticForm = ron::from_str(&text).unwrap();
        assert_eq!(back, f);
        for p in [[0, 0], [1, 2], [-3, 5]] {
            assert_eq!(back.eval(&p), f.eval(&p));
        }
    }
}
