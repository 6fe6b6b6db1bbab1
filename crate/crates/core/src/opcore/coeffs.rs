//! The integer coefficients a(n,r) of (QD)^n = Σ_r a(n,r) Q^r D^r.
//!
//! Two independent routes are implemented: the closed form
//! a(n,r) = [Σ_{k=1..r} C(r-1,k-1)·(-1)^(r-k)·k^(n-1)] / (r-1)!  (the
//! division is exact) and the row recursion a(n+1,r) = a(n,r-1) + r·a(n,r).
//! They agree everywhere; see docs/ledger.md entry L1 for the one value
//! that is often misquoted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::OpError;

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Closed-form a(n,r). Returns 0 when r > n; the integer sum is always
/// divisible by (r-1)!.
pub fn stirling_coeff(n: u32, r: u32) -> Result<BigInt, OpError> {
    if n == 0 || r == 0 {
        return Err(OpError::CoeffDomain { n, r });
    }
    if r > n {
        return Ok(BigInt::zero());
    }
    let mut sum = BigInt::zero();
    for k in 1..=r {
        let term = binomial(r - 1, k - 1) * BigInt::from(k).pow(n - 1);
        if (r - k) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quot, rem) = sum.div_rem(&factorial(r - 1));
    debug_assert!(rem.is_zero(), "closed-form sum not divisible by (r-1)!");
    Ok(quot)
}

/// The triangular table a(n,r), 1 <= r <= n <= max_n, filled row by row via
/// the recursion. Entries with r > n are representationally zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    max_n: u32,
    rows: Vec<Vec<BigInt>>,
}

/// Builds the table from row 1 = [1] using a(n+1,r) = a(n,r-1) + r·a(n,r).
pub fn stirling_table(max_n: u32) -> CoeffTable {
    assert!(max_n >= 1, "table needs at least one row");
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..max_n {
        let prev = &rows[(n - 1) as usize];
        let width = (n + 1) as usize;
        let mut row = Vec::with_capacity(width);
        for r in 1..=n + 1 {
            let from_left = if r >= 2 {
                prev.get((r - 2) as usize).cloned().unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
            let from_same = prev
                .get((r - 1) as usize)
                .map(|v| v * BigInt::from(r))
                .unwrap_or_else(BigInt::zero);
            row.push(from_left + from_same);
        }
        rows.push(row);
    }
    CoeffTable { max_n, rows }
}

impl CoeffTable {
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// a(n,r); zero for r > n. Panics when n is out of range or zero.
    pub fn value(&self, n: u32, r: u32) -> BigInt {
        assert!(n >= 1 && n <= self.max_n, "row {} out of range", n);
        assert!(r >= 1, "column must be positive");
        self.rows[(n - 1) as usize]
            .get((r - 1) as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, n: u32) -> &[BigInt] {
        &self.rows[(n - 1) as usize]
    }

    /// CSV with columns n,r,a; integers in decimal.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,a\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, j + 1, v));
            }
        }
        out
    }

    /// Nested-array JSON; entries are decimal strings so arbitrarily large
    /// rows survive any JSON parser.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_n": self.max_n,
            "rows": self.rows.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Partial sum Σ_{n=1..n_max} a(n,r)·m^n/n!, to be compared against
/// (e^m - 1)^r / r!.
pub fn egf_partial_sum(r: u32, m: f64, n_max: u32) -> f64 {
    assert!(r >= 1);
    let table = stirling_table(n_max.max(r));
    let mut power_over_factorial = 1.0;
    let mut sum = 0.0;
    for n in 1..=n_max {
        power_over_factorial *= m / f64::from(n);
        if n >= r {
            let a = table.value(n, r).to_f64().unwrap_or(f64::NAN);
            sum += a * power_over_factorial;
        }
    }
    sum
}
