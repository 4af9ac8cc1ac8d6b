//! Closed forms for the top coefficients of the restrained chromatic
//! polynomial.
//!
//! Coefficients follow the sign convention
//! `π_r(G, x) = Σ_i (-1)^{n-i} a_i x^i`, so every `a_i` is nonnegative.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, SubgraphCensus};
use crate::polynomial::{elementary_symmetric, IntPolynomial};
use crate::restraint::Restraint;

fn choose(m: i64, k: i64) -> i64 {
    if k < 0 || m < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn s(a: &[i64], i: usize) -> i64 {
    elementary_symmetric(a, i)
        .expect("index within list length")
        .try_into()
        .expect("symmetric function fits in i64")
}

fn inter(r: &Restraint, a: usize, b: usize) -> i64 {
    r.get(a).intersection(r.get(b)).count() as i64
}

fn inter3(r: &Restraint, a: usize, b: usize, c: usize) -> i64 {
    r.get(a)
        .iter()
        .filter(|col| r.get(b).contains(col) && r.get(c).contains(col))
        .count() as i64
}

fn check_len(g: &Graph, r: &Restraint) -> Result<()> {
    if r.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: r.len(),
        });
    }
    Ok(())
}

/// `a_i` read off a polynomial of degree `n`: `(-1)^{n-i}` times the
/// coefficient of `x^i`.
pub fn signed_coefficient(p: &IntPolynomial, n: usize, i: usize) -> BigInt {
    let c = p.coeff(i);
    if (n - i) % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `h_{n-2} = C(m,2) - #triangles`.
pub fn chromatic_h2(c: &SubgraphCensus) -> i64 {
    choose(c.m as i64, 2) - c.tri as i64
}

/// `h_{n-3} = C(m,3) - (m-2)#triangles - #induced C4 + 2#K4`.
pub fn chromatic_h3(c: &SubgraphCensus) -> i64 {
    let m = c.m as i64;
    choose(m, 3) - (m - 2) * c.tri as i64 - c.ind_c4 as i64 + 2 * c.k4 as i64
}

/// `a_{n-1} = m + Σ_u |r(u)|`.
pub fn coeff_n1(g: &Graph, r: &Restraint) -> Result<i64> {
    check_len(g, r)?;
    Ok(g.m() as i64 + r.sizes().iter().sum::<i64>())
}

/// `a_{n-2} = C(m,2) - #triangles + Σ_{i<j} |r_i||r_j| + m Σ|r_i| - Σ_{ij ∈ E} |r_i ∩ r_j|`.
pub fn coeff_n2(g: &Graph, r: &Restraint) -> Result<i64> {
    check_len(g, r)?;
    let sizes = r.sizes();
    let m = g.m() as i64;
    let total: i64 = sizes.iter().sum();
    let overlap: i64 = g.edges().map(|e| inter(r, e.0, e.1)).sum();
    Ok(chromatic_h2(&g.census()) + s(&sizes, 2) + m * total - overlap)
}

/// The cross-neighbourhood term
/// `-Σ_u Σ_{v<w ∈ N(u)} |r(v) ∩ r(w)|`, defined on any graph.
pub fn a7_double_prime(g: &Graph, r: &Restraint) -> Result<i64> {
    check_len(g, r)?;
    let mut total = 0;
    for u in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(u).collect();
        for (i, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                total += inter(r, v, w);
            }
        }
    }
    Ok(-total)
}

/// Named terms of `a_{n-3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientBreakdown {
    pub a_n_1: i64,
    pub a_n_2: i64,
    pub a_n_3: i64,
    pub terms: ThirdCoefficientTerms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdCoefficientTerms {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a5: i64,
    pub a6: i64,
    pub a7_prime: i64,
    pub a7_double_prime: i64,
    /// Half-integral in general (triangles contribute 3/2 per shared colour).
    pub a8_prime: Ratio<i64>,
    /// Half-integral in general; only `a8_prime + a8_double_prime` is integral.
    pub a8_double_prime: Ratio<i64>,
}

impl ThirdCoefficientTerms {
    pub fn a7(&self) -> i64 {
        self.a7_prime + self.a7_double_prime
    }

    pub fn a8(&self) -> Ratio<i64> {
        self.a8_prime + self.a8_double_prime
    }

    pub fn sum(&self) -> Ratio<i64> {
        Ratio::from_integer(self.a0 + self.a1 + self.a2 + self.a3 + self.a4 + self.a5 + self.a6 + self.a7())
            + self.a8()
    }
}

/// Full breakdown of `a_{n-3}` into `A_0 .. A_8`. Requires `n >= 3`.
pub fn coeff_n3(g: &Graph, r: &Restraint) -> Result<CoefficientBreakdown> {
    check_len(g, r)?;
    let n = g.n();
    if n < 3 {
        return Err(Error::CoefficientUndefined(format!(
            "x^(n-3) needs n >= 3, got n = {n}"
        )));
    }
    let census = g.census();
    let sizes = r.sizes();
    let m = g.m() as i64;
    let total: i64 = sizes.iter().sum();
    let edges: Vec<_> = g.edges().collect();

    let a0 = chromatic_h3(&census);
    let a1 = s(&sizes, 3);
    let a2 = (m - 1) * s(&sizes, 2);
    let mut a3 = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                a3 += sizes[i] * sizes[j];
            }
        }
    }
    let a4 = -edges
        .iter()
        .map(|e| inter(r, e.0, e.1) * (total - sizes[e.0] - sizes[e.1]))
        .sum::<i64>();
    let a5 = chromatic_h2(&census) * total;
    let a6 = -(m - 1) * edges.iter().map(|e| inter(r, e.0, e.1)).sum::<i64>();
    let a7_prime = edges
        .iter()
        .map(|e| {
            let common = (g.neighbor_mask(e.0) & g.neighbor_mask(e.1)).count_ones() as i64;
            common * inter(r, e.0, e.1)
        })
        .sum();
    let a7_double_prime = a7_double_prime(g, r)?;

    let mut union_sum = 0i64;
    let mut common_sum = 0i64;
    for e in &edges {
        let (i, j) = (e.0, e.1);
        let nu = g.neighbor_mask(i) | g.neighbor_mask(j);
        let others = nu & !(1u64 << i) & !(1u64 << j);
        for k in BitIter(others) {
            union_sum += inter3(r, i, j, k);
        }
        for k in BitIter(g.neighbor_mask(i) & g.neighbor_mask(j)) {
            common_sum += inter3(r, i, j, k);
        }
    }
    let terms = ThirdCoefficientTerms {
        a0,
        a1,
        a2,
        a3,
        a4,
        a5,
        a6,
        a7_prime,
        a7_double_prime,
        a8_prime: Ratio::new(union_sum, 2),
        a8_double_prime: Ratio::new(common_sum, 6),
    };
    let sum = terms.sum();
    if !sum.is_integer() {
        return Err(Error::CoefficientUndefined(format!(
            "third coefficient terms sum to non-integer {sum}; census or multiplicity bug"
        )));
    }
    Ok(CoefficientBreakdown {
        a_n_1: coeff_n1(g, r)?,
        a_n_2: coeff_n2(g, r)?,
        a_n_3: sum.to_integer(),
        terms,
    })
}
