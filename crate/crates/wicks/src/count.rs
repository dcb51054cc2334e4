//! Exact evaluation of the mass and count formulas.
//!
//! All arithmetic is exact big-rational arithmetic; no floating point.
//! Masses weight each equivalence class by the reciprocal of its
//! automorphism order, so class counts are recovered from masses by the
//! inclusion relations in [`report`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0, "negative factorial argument {n}");
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `(2/d)·(d²/12)^f` — the leading factor shared by the four mass
/// formulas.
fn leading(d: i64, f: i64) -> Rational {
    let base = ratio(int(d * d), int(12));
    let mut acc = ratio(int(2), int(d));
    for _ in 0..f {
        acc *= base.clone();
    }
    acc
}

/// Mass of all oriented maximal Wicks forms of genus `g`.
pub fn mass_m1(g: usize) -> Result<Rational> {
    if g < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: g });
    }
    let g = g as i64;
    let value = leading(1, g) * ratio(factorial(6 * g - 5), factorial(g) * factorial(3 * g - 3));
    Ok(value)
}

/// Mass of forms with an order-2 automorphism reversing exactly `r`
/// edges. Zero when `(2g+1−r)/4` is not a nonnegative integer.
pub fn mass_m2(g: usize, r: usize) -> Result<Rational> {
    if g < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: g });
    }
    let (g, r) = (g as i64, r as i64);
    let num = 2 * g + 1 - r;
    if num < 0 || num % 4 != 0 {
        return Ok(Rational::zero());
    }
    let f = num / 4;
    Ok(leading(2, f)
        * ratio(
            factorial(6 * f + 2 * r - 5),
            factorial(r) * factorial(f) * factorial(3 * f + r - 3),
        ))
}

/// Mass of forms with an order-3 automorphism fixing `s` positive and `t`
/// negative vertices. Zero when infeasible. The genus-1 value
/// `m³₁(0,2) = 1/6` is the theorem's stated special case (the general
/// formula's factorial argument is −1 there).
pub fn mass_m3(g: usize, s: usize, t: usize) -> Result<Rational> {
    if g < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: g });
    }
    let (g, s, t) = (g as i64, s as i64, t as i64);
    let num = g + 1 - s - t;
    if num < 0 || num % 3 != 0 || s % 3 != (2 * g + 1) % 3 {
        return Ok(Rational::zero());
    }
    debug_assert_eq!(t % 3, 2 * g % 3);
    if g == 1 {
        debug_assert_eq!((s, t), (0, 2));
        return Ok(ratio(int(1), int(6)));
    }
    let f = num / 3;
    Ok(leading(3, f)
        * ratio(
            factorial(6 * f + 2 * s + 2 * t - 5),
            factorial(s) * factorial(t) * factorial(f) * factorial(3 * f + s + t - 3),
        ))
}

/// Mass of forms with an order-6 automorphism whose cube reverses `3r`
/// edges and whose square fixes `2s` positive and `2t` negative vertices;
/// arguments are the unscaled `(r, s, t)`. Zero when infeasible. The
/// genus-1 value `m⁶₁(3;0,2) = 1/6` is the stated special case.
pub fn mass_m6(g: usize, r: usize, s: usize, t: usize) -> Result<Rational> {
    if g < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: g });
    }
    let (g, r, s, t) = (g as i64, r as i64, s as i64, t as i64);
    let num = 2 * g + 5 - 3 * r - 4 * s - 4 * t;
    if num < 0 || num % 12 != 0 || (2 * s) % 3 != (2 * g + 1) % 3 {
        return Ok(Rational::zero());
    }
    debug_assert_eq!((2 * t) % 3, (2 * g) % 3);
    if g == 1 {
        debug_assert_eq!((r, s, t), (1, 0, 1));
        return Ok(ratio(int(1), int(6)));
    }
    let f = num / 12;
    Ok(leading(6, f)
        * ratio(
            factorial(6 * f + 2 * (r + s + t) - 5),
            factorial(r)
                * factorial(s)
                * factorial(t)
                * factorial(f)
                * factorial(3 * f + r + s + t - 3),
        ))
}

/// Parameter tuples with nonzero mass for an automorphism order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(untagged)]
pub enum ParamTuple {
    R(usize),
    St(usize, usize),
    Rst(usize, usize, usize),
}

/// The finite list of feasible parameter tuples for order `d ∈ {2,3,6}`.
pub fn feasible_params(g: usize, d: usize) -> Result<Vec<ParamTuple>> {
    if g < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: g });
    }
    let mut out = Vec::new();
    match d {
        2 => {
            for r in 0..=(2 * g + 1) {
                if (2 * g + 1 - r) % 4 == 0 {
                    out.push(ParamTuple::R(r));
                }
            }
        }
        3 => {
            for s in 0..=(g + 1) {
                for t in 0..=(g + 1 - s) {
                    if (g + 1 - s - t) % 3 == 0 && s % 3 == (2 * g + 1) % 3 {
                        out.push(ParamTuple::St(s, t));
                    }
                }
            }
        }
        6 => {
            for r in 0..=((2 * g + 5) / 3) {
                for s in 0..=((2 * g + 5 - 3 * r) / 4) {
                    for t in 0..=((2 * g + 5 - 3 * r - 4 * s) / 4) {
                        if (2 * g + 5 - 3 * r - 4 * s - 4 * t) % 12 == 0
                            && (2 * s) % 3 == (2 * g + 1) % 3
                        {
                            out.push(ParamTuple::Rst(r, s, t));
                        }
                    }
                }
            }
        }
        other => {
            return Err(Error::UnsupportedOrder {
                order: other,
                expected: "2, 3 or 6",
            })
        }
    }
    Ok(out)
}

fn rational_to_integer(value: &Rational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Integrality(format!("{what} = {value}")))
    }
}

/// All masses, class counts and exact-order counts for one genus.
#[derive(Clone, Debug)]
pub struct MassReport {
    pub genus: usize,
    pub m1: Rational,
    pub m2_by_r: BTreeMap<usize, Rational>,
    pub m3_by_st: BTreeMap<(usize, usize), Rational>,
    /// Keyed by the unscaled `(r, s, t)`; displayed as `(3r; 2s, 2t)`.
    pub m6_by_rst: BTreeMap<(usize, usize, usize), Rational>,
    pub m2: Rational,
    pub m3: Rational,
    pub m6: Rational,
    pub m1_count: BigInt,
    pub m2_count: BigInt,
    pub m3_count: BigInt,
    pub m6_count: BigInt,
    /// Classes whose automorphism group has order exactly 1, 2, 3, 6.
    pub exact_order_counts: BTreeMap<usize, BigInt>,
}

impl MassReport {
    pub fn total_mass(&self, d: usize) -> Option<&Rational> {
        match d {
            1 => Some(&self.m1),
            2 => Some(&self.m2),
            3 => Some(&self.m3),
            6 => Some(&self.m6),
            _ => None,
        }
    }
}

/// Computes the full report: every feasible sub-mass, the totals, the
/// class counts `M₁ = m₁ + m₂ + 2m₃ + 2m₆`, `M₂ = 2m₂ + 4m₆`,
/// `M₃ = 3m₃ + 3m₆`, `M₆ = 6m₆`, and the exact-order breakdown.
pub fn report(g: usize) -> Result<MassReport> {
    let m1 = mass_m1(g)?;

    let mut m2_by_r = BTreeMap::new();
    for p in feasible_params(g, 2)? {
        if let ParamTuple::R(r) = p {
            m2_by_r.insert(r, mass_m2(g, r)?);
        }
    }
    let mut m3_by_st = BTreeMap::new();
    for p in feasible_params(g, 3)? {
        if let ParamTuple::St(s, t) = p {
            m3_by_st.insert((s, t), mass_m3(g, s, t)?);
        }
    }
    let mut m6_by_rst = BTreeMap::new();
    for p in feasible_params(g, 6)? {
        if let ParamTuple::Rst(r, s, t) = p {
            m6_by_rst.insert((r, s, t), mass_m6(g, r, s, t)?);
        }
    }

    let m2: Rational = m2_by_r.values().cloned().sum();
    let m3: Rational = m3_by_st.values().cloned().sum();
    let m6: Rational = m6_by_rst.values().cloned().sum();

    let two = Rational::from_integer(int(2));
    let three = Rational::from_integer(int(3));
    let four = Rational::from_integer(int(4));
    let six = Rational::from_integer(int(6));

    let m1_count = rational_to_integer(&(m1.clone() + &m2 + &m3 * &two + &m6 * &two), "M1")?;
    let m2_count = rational_to_integer(&(&m2 * &two + &m6 * &four), "M2")?;
    let m3_count = rational_to_integer(&(&m3 * &three + &m6 * &three), "M3")?;
    let m6_count = rational_to_integer(&(&m6 * &six), "M6")?;

    let mut exact_order_counts = BTreeMap::new();
    exact_order_counts.insert(1usize, &m1_count - &m2_count - &m3_count + &m6_count);
    exact_order_counts.insert(2usize, &m2_count - &m6_count);
    exact_order_counts.insert(3usize, &m3_count - &m6_count);
    exact_order_counts.insert(6usize, m6_count.clone());
    for (d, count) in &exact_order_counts {
        if count.is_negative() {
            return Err(Error::Integrality(format!(
                "exact-order count for d = {d} is negative: {count}"
            )));
        }
    }

    Ok(MassReport {
        genus: g,
        m1,
        m2_by_r,
        m3_by_st,
        m6_by_rst,
        m2,
        m3,
        m6,
        m1_count,
        m2_count,
        m3_count,
        m6_count,
        exact_order_counts,
    })
}

/// Number of pointed forms (linear words up to relabeling):
/// `(12g−6)·m_d^g`, always an integer.
pub fn pointed_count(g: usize, d: usize) -> Result<BigInt> {
    let r = report(g)?;
    let mass = r
        .total_mass(d)
        .ok_or(Error::UnsupportedOrder {
            order: d,
            expected: "1, 2, 3 or 6",
        })?
        .clone();
    let value = mass * Rational::from_integer(int(12 * g as i64 - 6));
    rational_to_integer(&value, &format!("(12g-6)·m_{d}^{g}"))
}

/// Checks the recursion `2(6g+1)(6g−1)(2g−1)·m₁^g = (g+1)·m₁^{g+1}`
/// exactly.
pub fn recursion_check(g: usize) -> Result<bool> {
    let lhs = mass_m1(g)?
        * Rational::from_integer(
            int(2) * int(6 * g as i64 + 1) * int(6 * g as i64 - 1) * int(2 * g as i64 - 1),
        );
    let rhs = mass_m1(g + 1)? * Rational::from_integer(int(g as i64 + 1));
    Ok(lhs == rhs)
}

/// The class counts `M₁^g` for `g = 1..=max_genus`.
pub fn table(max_genus: usize) -> Result<Vec<(usize, BigInt)>> {
    (1..=max_genus)
        .map(|g| Ok((g, report(g)?.m1_count)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(num: i64, den: i64) -> Rational {
        ratio(int(num), int(den))
    }

    #[test]
    fn m1_small_genera() {
        assert_eq!(mass_m1(1).unwrap(), rat(1, 6));
        assert_eq!(mass_m1(2).unwrap(), rat(35, 6));
        assert!(mass_m1(0).is_err());
    }

    #[test]
    fn m2_genus_two_values() {
        assert_eq!(mass_m2(2, 1).unwrap(), rat(2, 1));
        assert_eq!(mass_m2(2, 5).unwrap(), rat(1, 2));
        // (2g+1−r)/4 = 3/4 is not an integer
        assert_eq!(mass_m2(2, 2).unwrap(), Rational::zero());
    }

    #[test]
    fn m2_genus_one_value() {
        assert_eq!(mass_m2(1, 3).unwrap(), rat(1, 6));
    }

    #[test]
    fn m3_values() {
        assert_eq!(mass_m3(1, 0, 2).unwrap(), rat(1, 6));
        assert_eq!(mass_m3(2, 2, 1).unwrap(), rat(1, 3));
        // s ≢ 2g+1 (mod 3)
        assert_eq!(mass_m3(2, 0, 0).unwrap(), Rational::zero());
    }

    #[test]
    fn m6_values() {
        assert_eq!(mass_m6(1, 1, 0, 1).unwrap(), rat(1, 6));
        // f = 7/12 is not an integer
        assert_eq!(mass_m6(1, 0, 0, 0).unwrap(), Rational::zero());
        // no feasible parameters at genus 2 at all
        for r in 0..=4 {
            for s in 0..=3 {
                for t in 0..=3 {
                    assert_eq!(mass_m6(2, r, s, t).unwrap(), Rational::zero());
                }
            }
        }
    }

    #[test]
    fn feasible_parameter_lists() {
        assert_eq!(
            feasible_params(2, 2).unwrap(),
            vec![ParamTuple::R(1), ParamTuple::R(5)]
        );
        assert_eq!(feasible_params(2, 3).unwrap(), vec![ParamTuple::St(2, 1)]);
        assert_eq!(feasible_params(1, 6).unwrap(), vec![ParamTuple::Rst(1, 0, 1)]);
        assert!(feasible_params(2, 4).is_err());
    }

    #[test]
    fn report_genus_one() {
        let r = report(1).unwrap();
        assert_eq!(r.m1_count, int(1));
        assert_eq!(r.m2_count, int(1));
        assert_eq!(r.m3_count, int(1));
        assert_eq!(r.m6_count, int(1));
        assert_eq!(r.exact_order_counts[&6], int(1));
        assert_eq!(r.exact_order_counts[&3], int(0));
        assert_eq!(r.exact_order_counts[&2], int(0));
        assert_eq!(r.exact_order_counts[&1], int(0));
    }

    #[test]
    fn report_genus_two() {
        let r = report(2).unwrap();
        assert_eq!(r.m1_count, int(9));
        assert_eq!(r.m2_count, int(5));
        assert_eq!(r.m3_count, int(1));
        assert_eq!(r.m6_count, int(0));
        assert_eq!(r.exact_order_counts[&1], int(3));
        assert_eq!(r.exact_order_counts[&2], int(5));
        assert_eq!(r.exact_order_counts[&3], int(1));
        assert_eq!(r.exact_order_counts[&6], int(0));
    }

    #[test]
    fn report_genus_fifteen_matches_table() {
        let r = report(15).unwrap();
        assert_eq!(
            r.m1_count.to_string(),
            "19903817294929565349602352185144632327980494486370"
        );
    }

    #[test]
    fn pointed_counts() {
        assert_eq!(pointed_count(1, 1).unwrap(), int(1));
        assert_eq!(pointed_count(2, 1).unwrap(), int(105));
        assert_eq!(pointed_count(2, 3).unwrap(), int(6));
    }

    #[test]
    fn recursion_holds_for_small_genera() {
        for g in 1..=14 {
            assert!(recursion_check(g).unwrap(), "recursion failed at g = {g}");
        }
    }

    #[test]
    fn genus_three_breakdown() {
        // hand-evaluated sub-masses
        assert_eq!(mass_m2(3, 3).unwrap(), rat(140, 3));
        assert_eq!(mass_m2(3, 7).unwrap(), rat(3, 1));
        assert_eq!(mass_m3(3, 1, 3).unwrap(), rat(2, 3));
        assert_eq!(mass_m3(3, 4, 0).unwrap(), rat(1, 6));
        assert_eq!(mass_m3(3, 1, 0).unwrap(), rat(3, 1));
        assert_eq!(mass_m6(3, 1, 2, 0).unwrap(), rat(1, 6));
        let r = report(3).unwrap();
        assert_eq!(r.m1_count, int(1726));
    }
}
