use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Weakly decreasing integer vector in which every odd value occurs an even
/// number of times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPartition("empty".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{entries:?} is not weakly decreasing")));
        }
        for g in groups_of(&entries) {
            if g.0.rem_euclid(2) == 1 && g.1 % 2 == 1 {
                return Err(Error::InvalidPartition(format!("odd value {} occurs {} times in {entries:?}", g.0, g.1)));
            }
        }
        Ok(Partition(entries))
    }

    /// Constant partition (v, ..., v) of length n.
    pub fn constant(v: i64, n: usize) -> Result<Self> {
        Self::new(vec![v; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of entries.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// sum_i (i - 1) alpha_i.
    pub fn n_weight(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &a)| i as i64 * a).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|a| a.rem_euclid(2) == 1).count()
    }

    /// Maximal runs of equal values as (value, multiplicity).
    pub fn groups(&self) -> Vec<(i64, usize)> {
        groups_of(&self.0)
    }

    /// lambda_i = floor((alpha_i + 1) / 2).
    pub fn lambda(&self) -> Vec<i64> {
        self.0.iter().map(|a| (a + 1).div_euclid(2)).collect()
    }

    /// 1-based positions l with alpha_l = alpha_{l+1} odd, paired greedily from the left.
    pub fn odd_pairs(&self) -> Vec<usize> {
        let a = &self.0;
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < a.len() {
            if a[i].rem_euclid(2) == 1 && a[i] == a[i + 1] {
                out.push(i + 1);
                i += 2;
            } else {
                i += 1;
            }
        }
        out
    }

    /// Add the same integer to every entry (shift by a scalar matrix).
    pub fn shifted(&self, e: i64) -> Partition {
        Partition(self.0.iter().map(|a| a + 2 * e).collect())
    }

    /// Partition obtained by appending entries (used by embedding checks).
    pub fn concat(&self, other: &Partition) -> Result<Partition> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v)
    }
}

fn groups_of(v: &[i64]) -> Vec<(i64, usize)> {
    let mut out: Vec<(i64, usize)> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some((y, m)) if *y == x => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![2, 0]).is_ok());
        assert!(Partition::new(vec![1, 1]).is_ok());
        assert!(Partition::new(vec![0, -1, -1]).is_ok());
        assert!(Partition::new(vec![1, 0]).is_err());
        assert!(Partition::new(vec![0, 2]).is_err());
        assert!(Partition::new(vec![1, 1, 1]).is_err());
        assert!(Partition::new(vec![]).is_err());
    }

    #[test]
    fn derived_data() {
        let a: Partition = "3,3,1,1,0".parse().unwrap();
        assert_eq!(a.n_weight(), 3 + 2 + 3);
        assert_eq!(a.lambda(), vec![2, 2, 1, 1, 0]);
        assert_eq!(a.odd_pairs(), vec![1, 3]);
        assert_eq!(a.groups(), vec![(3, 2), (1, 2), (0, 1)]);
        let b: Partition = "(1,1,1,1)".parse().unwrap();
        assert_eq!(b.odd_pairs(), vec![1, 3]);
        let c: Partition = "-1,-1".parse().unwrap();
        assert_eq!(c.lambda(), vec![0, 0]);
        assert_eq!(Partition::new(vec![-2]).unwrap().lambda(), vec![-1]);
        assert_eq!(a.to_string(), "(3,3,1,1,0)");
    }
}
