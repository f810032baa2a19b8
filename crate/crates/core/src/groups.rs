//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity exhaustively.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Schema { field: "group".into(), message: "empty group".into() });
        }
        if table.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: table.len() });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Range { field: "group.table".into(), entry: i, index: bad, dim: n });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|p| table[e][p] == p && table[p][e] == p))
            .ok_or_else(|| Error::Schema { field: "group.table".into(), message: "no identity element".into() })?;
        let mut inverse = Vec::with_capacity(n);
        for p in 0..n {
            let q = (0..n)
                .find(|&q| table[p][q] == identity && table[q][p] == identity)
                .ok_or_else(|| Error::Schema { field: "group.table".into(), message: format!("element {p} has no inverse") })?;
            inverse.push(q);
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if table[table[p][q]][r] != table[p][table[q][r]] {
                        return Err(Error::Schema {
                            field: "group.table".into(),
                            message: format!("not associative at ({p}, {q}, {r})"),
                        });
                    }
                }
            }
        }
        Ok(Self { names, table, inverse, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|p| (0..n).map(|q| (p + q) % n).collect()).collect();
        Self::from_table(names, table).expect("cyclic group table")
    }

    /// Permutations of {0,1,2} in lexicographic order; the product `pq`
    /// applies `q` first.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::from_table(names, table).expect("S3 table")
    }

    /// Direct product, with element `(g, h)` at index `g·|H| + h`.
    pub fn product(g: &Self, h: &Self) -> Self {
        let (m, n) = (g.order(), h.order());
        let mut names = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                names.push(format!("({},{})", g.names[a], h.names[b]));
            }
        }
        let table = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        Self::from_table(names, table).expect("direct product table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, p: usize, q: usize) -> usize {
        self.table[p][q]
    }

    pub fn inv(&self, p: usize) -> usize {
        self.inverse[p]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|p| (0..self.order()).all(|q| self.mul(p, q) == self.mul(q, p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_with_identity_first() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        // transpositions are involutions, 3-cycles are mutually inverse
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.inv(3), 4);
    }

    #[test]
    fn cyclic_inverses() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.inv(1), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn bad_table_rejected() {
        let err = FiniteGroup::from_table(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
        let err = FiniteGroup::from_table(vec!["a".into()], vec![vec![3]]).unwrap_err();
        assert!(matches!(err, Error::Range { .. }));
    }
}
