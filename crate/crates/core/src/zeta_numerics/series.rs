//! Direct summation with asymptotic tail corrections.

use std::collections::BTreeMap;

use rug::{Assign, Float, Integer, Rational};

use super::ball::up;
use super::PrecisionConfig;

/// `B_2, B_4, ..., B_{2n}`.
pub(crate) fn bernoulli_even(n: usize) -> Vec<Rational> {
    let top = 2 * n;
    let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
    b.push(Rational::from(1));
    for m in 1..=top {
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(bk * Integer::from(Integer::binomial_u((m + 1) as u32, k as u32)));
        }
        b.push(-acc / Rational::from(m as u32 + 1));
    }
    (1..=n).map(|i| b[2 * i].clone()).collect()
}

fn inv_factorial(n: u32) -> Rational {
    Rational::from((1, Integer::from(Integer::factorial(n))))
}

fn ulp_factor(prec: u32) -> f64 {
    2f64.powi(1 - prec as i32)
}

/// `ζ(m)` for `m >= 2`: the sum over `n < N` plus the Euler–Maclaurin tail
/// `N^{1-m}/(m-1) + N^{-m}/2 + Σ_i B_{2i}/(2i)! (m)_{2i-1} N^{1-m-2i}`.
///
/// Since `x^{-m}` is completely monotone the remainder is bounded by the
/// first omitted correction.
pub(crate) fn zeta_single(m: u32, cfg: &PrecisionConfig) -> (Float, f64) {
    assert!(m >= 2);
    let prec = cfg.prec_bits;
    let n = cfg.trunc;
    let mut sum = Float::new(prec);
    let mut term = Float::new(prec);
    for j in (1..n).rev() {
        term.assign(Float::u_pow_u(j as u32, m));
        term.recip_mut();
        sum += &term;
    }
    let nf = Float::with_val(prec, n);
    let inv_n = Float::with_val(prec, nf.recip_ref());
    let mut inv_nm = Float::with_val(prec, Float::u_pow_u(n as u32, m));
    inv_nm.recip_mut();
    let mut tail = Float::with_val(prec, &inv_nm * &nf) / (m - 1);
    tail += Float::with_val(prec, &inv_nm / 2u32);
    let bern = bernoulli_even(cfg.tail_order as usize + 1);
    let inv_n2 = Float::with_val(prec, inv_n.square_ref());
    // rising = (m)_{2i-1}, pw = N^{1-m-2i}
    let mut rising = Integer::from(m);
    let mut pw = Float::with_val(prec, &inv_nm * &inv_n);
    let mut omitted = 0.0;
    for (i, b) in bern.iter().enumerate() {
        let i = i as u32 + 1;
        if i > 1 {
            rising *= (m + 2 * i - 3) * (m + 2 * i - 2);
            pw *= &inv_n2;
        }
        let c = Rational::from(b * &rising) * inv_factorial(2 * i);
        let t = Float::with_val(prec, &pw * &c);
        if i > cfg.tail_order {
            omitted = up(t.to_f64().abs() * 1.01);
        } else {
            tail += &t;
        }
    }
    sum += &tail;
    let ops = (n as f64 + 4.0 * cfg.tail_order as f64 + 8.0) * 3.0;
    let rounding = up(ops * ulp_factor(prec) * sum.to_f64().abs().max(1.0));
    (sum, up(omitted + rounding))
}

/// Asymptotic expansion `Σ c_{q,p} (ln n)^p n^{-q}`, truncated at `q <= qmax`.
#[derive(Clone, Debug)]
struct Expansion {
    qmax: u32,
    prec: u32,
    terms: BTreeMap<(u32, u32), Float>,
}

impl Expansion {
    fn new(qmax: u32, prec: u32) -> Self {
        Expansion { qmax, prec, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, q: u32, p: u32, c: Float) {
        if q > self.qmax || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(q, p)) {
            Some(v) => *v += c,
            None => {
                self.terms.insert((q, p), c);
            }
        }
    }

    fn add_scaled(&mut self, other: &Expansion, s: &Rational) {
        for (&(q, p), c) in &other.terms {
            self.add_term(q, p, Float::with_val(self.prec, c * s));
        }
    }

    /// `self · n^{-k}`.
    fn shifted(&self, k: u32) -> Expansion {
        let mut out = Expansion::new(self.qmax, self.prec);
        for (&(q, p), c) in &self.terms {
            out.add_term(q + k, p, c.clone());
        }
        out
    }

    /// `d/dn (L^p n^{-q}) = p L^{p-1} n^{-q-1} - q L^p n^{-q-1}`.
    fn derivative(&self) -> Expansion {
        let mut out = Expansion::new(self.qmax, self.prec);
        for (&(q, p), c) in &self.terms {
            if p > 0 {
                out.add_term(q + 1, p - 1, Float::with_val(self.prec, c * p));
            }
            if q > 0 {
                out.add_term(q + 1, p, -Float::with_val(self.prec, c * q));
            }
        }
        out
    }

    /// Antiderivative without constant term; every term must have `q >= 1`.
    ///
    /// For `q = 1` this is `L^{p+1}/(p+1)`; otherwise, with `s = 1 - q`,
    /// `n^s Σ_i (-1)^i p!/(p-i)! L^{p-i} / s^{i+1}`.
    fn antiderivative(&self) -> Expansion {
        let mut out = Expansion::new(self.qmax, self.prec);
        for (&(q, p), c) in &self.terms {
            debug_assert!(q >= 1);
            if q == 1 {
                out.add_term(0, p + 1, Float::with_val(self.prec, c / (p + 1)));
                continue;
            }
            let s = Rational::from(1 - q as i64);
            let mut falling = Integer::from(1);
            let mut spow = s.clone();
            for i in 0..=p {
                if i > 0 {
                    falling *= p - i + 1;
                    spow *= &s;
                }
                let mut coef = Rational::from(&falling) / &spow;
                if i % 2 == 1 {
                    coef = -coef;
                }
                out.add_term(q - 1, p - i, Float::with_val(self.prec, c * &coef));
            }
        }
        out
    }

    /// Value at `n`, together with `Σ |term|` for rounding estimates.
    fn eval(&self, inv_n: &Float, ln_n: &Float) -> (Float, f64) {
        let mut sum = Float::new(self.prec);
        let mut mag = 0.0;
        for (&(q, p), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..q {
                t *= inv_n;
            }
            for _ in 0..p {
                t *= ln_n;
            }
            mag += t.to_f64().abs();
            sum += &t;
        }
        (sum, mag)
    }

    fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Expansion order used for a given tail order.
pub(crate) fn expansion_order(tail_order: u32) -> u32 {
    2 * tail_order + 2
}

/// Constants `C_1, ..., C_r` of the prefix sums of `k`, using the partial sums
/// `s[j] = S_j(N)` and expansions truncated at `qmax`.
///
/// The summand of level `j` is `g_j(n) = S_{j-1}(n-1) n^{-k_j}` whose expansion
/// is `(E_{j-1} - G_{j-1}) n^{-k_j}`; Euler–Maclaurin then gives
/// `S_j(n) = C_j + F_j(n) + g_j(n)/2 + Σ_i B_{2i}/(2i)! g_j^{(2i-1)}(n)`.
fn prefix_constants(k: &[u32], s: &[Float], n: u64, qmax: u32, prec: u32) -> Vec<(Float, f64)> {
    let nf = Float::with_val(prec, n);
    let inv_n = Float::with_val(prec, nf.recip_ref());
    let ln_n = Float::with_val(prec, nf.ln_ref());
    let bern = bernoulli_even(qmax as usize / 2 + 1);

    let mut e_prev = Expansion::new(qmax, prec);
    e_prev.add_term(0, 0, Float::with_val(prec, 1));
    let mut g_prev = Expansion::new(qmax, prec);
    let mut out = Vec::with_capacity(k.len());
    for (j, &kj) in k.iter().enumerate() {
        let mut inner = e_prev.clone();
        inner.add_scaled(&g_prev, &Rational::from(-1));
        let g = inner.shifted(kj);

        let mut e = g.antiderivative();
        e.add_scaled(&g, &Rational::from((1, 2)));
        let mut d = g.derivative();
        for (order, b) in (1u32..).zip(&bern) {
            if d.is_empty() {
                break;
            }
            e.add_scaled(&d, &(Rational::from(b) * inv_factorial(2 * order)));
            d = d.derivative().derivative();
        }
        let (tail, mag) = e.eval(&inv_n, &ln_n);
        let c = Float::with_val(prec, &s[j + 1] - &tail);
        let rounding = up((e.terms.len() as f64 * 4.0 + 4.0) * ulp_factor(prec) * (mag + s[j + 1].to_f64().abs()));
        e.add_term(0, 0, c.clone());
        out.push((c, rounding));
        e_prev = e;
        g_prev = g;
    }
    out
}

/// Constants of every prefix of `k` with error bounds; the last entry is
/// `ζ(k)` when `k` is admissible.
pub(crate) fn mzv_prefixes(k: &[u32], cfg: &PrecisionConfig) -> Vec<(Float, f64)> {
    let r = k.len();
    let prec = cfg.prec_bits;
    let n = cfg.trunc;
    let kmax = *k.iter().max().unwrap() as usize;

    let mut s: Vec<Float> = (0..=r).map(|_| Float::new(prec)).collect();
    s[0].assign(1);
    let mut pw: Vec<Float> = (0..=kmax).map(|_| Float::new(prec)).collect();
    let mut tmp = Float::new(prec);
    for m in 1..=n {
        pw[1].assign(m);
        pw[1].recip_mut();
        for e in 2..=kmax {
            let (lo, hi) = pw.split_at_mut(e);
            hi[0].assign(&lo[e - 1] * &lo[1]);
        }
        for j in (1..=r).rev() {
            tmp.assign(&s[j - 1] * &pw[k[j - 1] as usize]);
            s[j] += &tmp;
        }
    }
    let smax = s.iter().map(|x| x.to_f64().abs()).fold(1.0, f64::max);
    let ln_n = (n as f64).ln();
    let sum_rounding = up(
        4.0 * n as f64 * (r + kmax + 4) as f64 * ulp_factor(prec) * smax * (2.0 + ln_n).powi(r as i32),
    );

    let qmax = expansion_order(cfg.tail_order);
    let main = prefix_constants(k, &s, n, qmax, prec);
    let lower1 = prefix_constants(k, &s, n, qmax - 1, prec);
    let lower2 = prefix_constants(k, &s, n, qmax.saturating_sub(2).max(1), prec);
    // a-priori size of the first dropped order
    let next = up((qmax as f64 + 1.0) * (n as f64).powi(-(qmax as i32 + 1)) * (2.0 + ln_n).powi(r as i32) * factorial_f64(qmax));

    main.into_iter()
        .zip(lower1.iter().zip(&lower2))
        .map(|((c, round), (c1, c2))| {
            let d1 = Float::with_val(prec, &c - &c1.0).to_f64().abs();
            let d2 = Float::with_val(prec, &c - &c2.0).to_f64().abs();
            let trunc = up(8.0 * d1.max(d2) + next);
            (c, up(trunc + round + sum_rounding))
        })
        .collect()
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trunc: u64) -> PrecisionConfig {
        PrecisionConfig { trunc, ..Default::default() }
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_even(4);
        assert_eq!(b[0], Rational::from((1, 6)));
        assert_eq!(b[1], Rational::from((-1, 30)));
        assert_eq!(b[2], Rational::from((1, 42)));
        assert_eq!(b[3], Rational::from((-1, 30)));
    }

    #[test]
    fn single_zeta_against_pi() {
        let c = cfg(1000);
        let (z2, e2) = zeta_single(2, &c);
        let pi = Float::with_val(128, rug::float::Constant::Pi);
        let exact = Float::with_val(128, pi.square_ref()) / 6u32;
        let d = Float::with_val(128, &z2 - &exact).to_f64().abs();
        assert!(d <= e2, "{d} > {e2}");
        assert!(e2 < 1e-25);
    }

    #[test]
    fn nested_known_values() {
        let c = cfg(2000);
        let (z3, _) = zeta_single(3, &c);
        let v = mzv_prefixes(&[1, 2], &c);
        let (z12, e12) = &v[1];
        let d = Float::with_val(128, z12 - &z3).to_f64().abs();
        assert!(d <= *e12, "{d} > {e12}");
        assert!(*e12 < 1e-20, "{e12}");
        // C_1 is Euler's constant
        let gamma = Float::with_val(128, rug::float::Constant::Euler);
        assert!(Float::with_val(128, &v[0].0 - &gamma).to_f64().abs() <= v[0].1);
    }

    #[test]
    fn depth_three_with_inner_ones() {
        let c = cfg(3000);
        let (z4, _) = zeta_single(4, &c);
        let v = mzv_prefixes(&[1, 1, 2], &c);
        let (z, e) = &v[2];
        let d = Float::with_val(128, z - &z4).to_f64().abs();
        assert!(d <= *e && *e < 1e-15, "{d} {e}");
    }
}
