//! Exponential Bell polynomials and the Stirling and Bell numbers they count.

use rug::Integer;

use crate::error::{Error, Result};
use crate::ring::{binomial, factorial, Ring};

/// Partial exponential Bell polynomial `B_{r,k}(x_1, ..., x_{r-k+1})`.
///
/// Evaluated with the recurrence
/// `B_{n,j} = Σ_{i ≥ 1} C(n-1, i-1) x_i B_{n-i, j-1}`, restricted to the states
/// with `n - j ≤ r - k` so that only the first `r - k + 1` entries of `xs` are read.
pub fn bell_partial<R: Ring>(r: usize, k: usize, xs: &[R]) -> Result<R> {
    if k < 1 || k > r {
        return Err(Error::domain(format!(
            "partial Bell polynomial B_{{{r},{k}}} needs 1 <= k <= r"
        )));
    }
    let span = r - k;
    if xs.len() < span + 1 {
        return Err(Error::domain(format!(
            "B_{{{r},{k}}} needs {} arguments, got {}",
            span + 1,
            xs.len()
        )));
    }
    // table[j][d] = B_{j+d, j}
    let mut table: Vec<Vec<R>> = vec![Vec::with_capacity(span + 1); k + 1];
    table[0].push(R::one());
    table[0].extend((0..span).map(|_| R::zero()));
    for j in 1..=k {
        for d in 0..=span {
            let n = j + d;
            let mut acc = R::zero();
            for i in 1..=d + 1 {
                let prev = &table[j - 1][d + 1 - i];
                if prev.is_zero() {
                    continue;
                }
                let c = binomial((n - 1) as u32, (i - 1) as u32);
                acc = acc + (xs[i - 1].clone() * prev.clone()).scale_integer(&c);
            }
            table[j].push(acc);
        }
    }
    Ok(table[k][span].clone())
}

/// Complete exponential Bell polynomial `Y_r(x_1, ..., x_r)`, with `Y_0 = 1`.
pub fn bell_complete<R: Ring>(r: usize, xs: &[R]) -> Result<R> {
    if r == 0 {
        return Ok(R::one());
    }
    if xs.len() < r {
        return Err(Error::domain(format!(
            "Y_{r} needs {r} arguments, got {}",
            xs.len()
        )));
    }
    (1..=r).try_fold(R::zero(), |acc, k| Ok(acc + bell_partial(r, k, &xs[..r - k + 1])?))
}

/// Number of partitions of `{1..r}` with `shape[a-1]` blocks of size `a` and
/// `k` blocks in total: `r! / ∏ (i_a! (a!)^{i_a})`.
pub fn partition_shape_count(r: usize, k: usize, shape: &[usize]) -> Result<Integer> {
    let blocks: usize = shape.iter().sum();
    let size: usize = shape.iter().enumerate().map(|(a, &i)| (a + 1) * i).sum();
    if blocks != k || size != r {
        return Err(Error::domain(format!(
            "shape {shape:?} does not describe {k} blocks covering {r} elements"
        )));
    }
    let mut denom = Integer::from(1);
    for (a, &i) in shape.iter().enumerate() {
        denom *= factorial(i as u32);
        denom *= factorial(a as u32 + 1).pow(i as u32);
    }
    Ok(factorial(r as u32) / denom)
}

/// All block-size shapes `(i_1, ..., i_{r-k+1})` with `k` blocks covering `r` elements.
pub fn partition_shapes(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(a: usize, len: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            if r == 0 && k == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..=k.min(r / a) {
            cur.push(i);
            rec(a + 1, len, r - a * i, k - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > r {
        return out;
    }
    let mut cur = Vec::new();
    rec(1, r - k + 1, r, k, &mut cur, &mut out);
    out
}

/// Unsigned Stirling numbers of the first kind, the coefficients of the rising factorial.
pub fn stirling_first_unsigned(r: usize, k: usize) -> Integer {
    // row[j] = s̄(n, j)
    let mut row = vec![Integer::from(1)];
    for n in 0..r {
        let mut next = vec![Integer::new(); n + 2];
        for (j, v) in row.iter().enumerate() {
            next[j] += Integer::from(v * n as u32);
            next[j + 1] += v;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Stirling numbers of the second kind.
pub fn stirling_second(r: usize, k: usize) -> Integer {
    let mut row = vec![Integer::from(1)];
    for n in 0..r {
        let mut next = vec![Integer::new(); n + 2];
        for (j, v) in row.iter().enumerate() {
            next[j] += Integer::from(v * j as u32);
            next[j + 1] += v;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Bell numbers via the Bell triangle.
pub fn bell_number(n: usize) -> Integer {
    let mut row = vec![Integer::from(1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let s = Integer::from(next.last().unwrap() + v);
            next.push(s);
        }
        row = next;
    }
    row[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::MultiPoly;
    use rug::Rational;

    fn factorials(n: usize) -> Vec<Integer> {
        (0..n).map(|i| factorial(i as u32)).collect()
    }

    #[test]
    fn b42_polynomial() {
        let xs: Vec<MultiPoly> = (1..=3).map(MultiPoly::var).collect();
        let b = bell_partial(4, 2, &xs).unwrap();
        let expected = MultiPoly::var(1) * MultiPoly::var(3) * MultiPoly::from_i64(4)
            + MultiPoly::var(2) * MultiPoly::var(2) * MultiPoly::from_i64(3);
        assert_eq!(b, expected);
        assert_eq!(b.to_string(), "4*x1*x3 + 3*x2^2");
    }

    #[test]
    fn single_block_is_last_variable() {
        for r in 1..6 {
            let xs: Vec<MultiPoly> = (1..=r as u32).map(MultiPoly::var).collect();
            assert_eq!(bell_partial(r, 1, &xs).unwrap(), MultiPoly::var(r as u32));
        }
    }

    #[test]
    fn stirling_first_from_factorials() {
        assert_eq!(bell_partial(3, 2, &factorials(2)).unwrap(), 3);
        assert_eq!(stirling_first_unsigned(3, 2), 3);
        for r in 1..=8 {
            assert_eq!(stirling_first_unsigned(r, r), 1);
            for k in 1..=r {
                assert_eq!(
                    bell_partial(r, k, &factorials(r - k + 1)).unwrap(),
                    stirling_first_unsigned(r, k)
                );
                let ones = vec![Integer::from(1); r - k + 1];
                assert_eq!(bell_partial(r, k, &ones).unwrap(), stirling_second(r, k));
            }
        }
        assert_eq!(stirling_second(4, 2), 7);
    }

    #[test]
    fn domain_errors() {
        let xs = vec![Integer::from(1); 4];
        assert!(bell_partial(3, 0, &xs).is_err());
        assert!(bell_partial(3, 4, &xs).is_err());
        assert!(bell_partial(4, 1, &xs[..2]).is_err());
        assert!(bell_complete(3, &xs[..2]).is_err());
        assert!(partition_shape_count(4, 2, &[1, 1, 0]).is_err());
    }

    #[test]
    fn complete_polynomial_small_cases() {
        assert_eq!(bell_complete::<Integer>(0, &[]).unwrap(), 1);
        let x1 = vec![Rational::from((5, 7))];
        assert_eq!(bell_complete(1, &x1).unwrap(), Rational::from((5, 7)));
        assert_eq!(bell_complete(4, &factorials(4)).unwrap(), 24);
        let xs: Vec<MultiPoly> = (1..=3).map(MultiPoly::var).collect();
        assert_eq!(
            bell_complete(3, &xs).unwrap().to_string(),
            "x1^3 + 3*x1*x2 + x3"
        );
    }

    #[test]
    fn shape_counts() {
        assert_eq!(partition_shape_count(4, 2, &[1, 0, 1]).unwrap(), 4);
        assert_eq!(partition_shape_count(4, 2, &[0, 2, 0]).unwrap(), 3);
        assert_eq!(partition_shape_count(5, 5, &[5]).unwrap(), 1);
        assert_eq!(partition_shapes(4, 2), vec![vec![0, 2, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn bell_numbers() {
        let expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell_number(n), b);
        }
    }
}
