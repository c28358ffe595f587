//! Finite groups by Cayley table.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("Cayley table must be {n}x{n}")));
        }
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| table[i][j] >= n) {
            return Err(Error::check("group closure", format!("({}, {})", labels[i], labels[j])));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::check(
                            "group associativity",
                            format!("({}, {}, {})", labels[a], labels[b], labels[c]),
                        ));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::check("group identity", "no two-sided identity"))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::check("group inverses", labels[a].clone()))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { labels, table, identity, inverses })
    }

    /// `C_n = <g>`, element `i` is `g^i`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let labels = (0..n).map(power_label).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(labels, table).expect("cyclic group")
    }

    /// `S_3` with elements `r^i s^j` at index `3j + i`, `r = (0 1 2)`, `s = (0 1)`.
    pub fn symmetric3() -> FiniteGroup {
        fn compose(p: [usize; 3], q: [usize; 3]) -> [usize; 3] {
            // (p q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        }
        let e = [0, 1, 2];
        let r = [1, 2, 0];
        let s = [1, 0, 2];
        let mut perms = Vec::new();
        for j in 0..2 {
            for i in 0..3 {
                let mut p = e;
                for _ in 0..i {
                    p = compose(p, r);
                }
                if j == 1 {
                    p = compose(p, s);
                }
                perms.push(p);
            }
        }
        let labels = vec!["1", "r", "r2", "s", "rs", "r2s"].into_iter().map(String::from).collect();
        let table = perms
            .iter()
            .map(|&p| perms.iter().map(|&q| perms.iter().position(|&x| x == compose(p, q)).unwrap()).collect())
            .collect();
        FiniteGroup::from_table(labels, table).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        self.is_subgroup(elems)
            && (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g)))))
    }

    /// The subgroup on `elems` (sorted), with the inclusion map.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::check("subgroup", format!("{elems:?} is not a subgroup")));
        }
        let sorted: Vec<usize> = elems.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos = |g: usize| sorted.iter().position(|&x| x == g).unwrap();
        let table = sorted.iter().map(|&a| sorted.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let labels = sorted.iter().map(|&g| self.labels[g].clone()).collect();
        Ok((FiniteGroup::from_table(labels, table)?, sorted))
    }

    /// Left cosets `gH`, ordered by their smallest element; each coset sorted.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen.contains(&g) {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            seen.extend(c.iter().copied());
            cosets.push(c);
        }
        cosets
    }

    /// `G/N` by coset multiplication, with the projection `g ↦ coset index`.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal(format!("{normal:?}")));
        }
        let cosets = self.left_cosets(normal);
        let mut proj = vec![0; self.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &g in c {
                proj[g] = k;
            }
        }
        let table = cosets.iter().map(|a| cosets.iter().map(|b| proj[self.mul(a[0], b[0])]).collect()).collect();
        let labels = cosets.iter().map(|c| format!("{}N", self.labels[c[0]])).collect();
        Ok((FiniteGroup::from_table(labels, table)?, proj))
    }
}

fn power_label(i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => "g".into(),
        _ => format!("g{i}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        let c3 = [0, 1, 2];
        assert!(g.is_normal(&c3));
        let c2 = [0, 3];
        assert!(g.is_subgroup(&c2) && !g.is_normal(&c2));
        assert_eq!(g.left_cosets(&c3).len(), 2);
        assert_eq!(g.left_cosets(&c2).len(), 3);
        let (q, _) = g.quotient(&c3).unwrap();
        assert_eq!(q.order(), 2);
        // s r s = r^2
        let (r, s) = (1, 3);
        assert_eq!(g.mul(g.mul(s, r), s), 2);
    }

    #[test]
    fn rejects_non_groups() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let err = FiniteGroup::from_table(labels.clone(), vec![vec![0, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::Check { .. }));
        assert!(FiniteGroup::from_table(labels, vec![vec![0, 2], vec![1, 0]]).is_err());
    }
}
