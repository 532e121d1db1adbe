//! Permutations of the points 1..=degree, parsed and printed in
//! disjoint-cycle notation. Stored 0-based internally.

use std::fmt;

use crate::group::GroupError;

/// A permutation of {1, .., degree}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, GroupError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree {
                return Err(GroupError::NotAPermutation {
                    degree,
                    reason: format!("image {} out of range", i + 1),
                });
            }
            if seen[i] {
                return Err(GroupError::NotAPermutation {
                    degree,
                    reason: format!("image {} repeated", i + 1),
                });
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4)` or
    /// `(1,2,3)`. `()` denotes the identity. When cycles are not disjoint
    /// they compose right-to-left.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, GroupError> {
        let fail = |reason: &str| GroupError::NotAPermutation {
            degree,
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => return Err(fail(&format!("unexpected character '{c}'"))),
            }
            let mut cycle: Vec<usize> = Vec::new();
            let mut number = String::new();
            loop {
                match chars.next() {
                    None => return Err(fail("unclosed cycle")),
                    Some(')') => {
                        if !number.is_empty() {
                            cycle.push(parse_point(&number, degree)?);
                        }
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => number.push(c),
                    Some(c) if c.is_whitespace() || c == ',' => {
                        if !number.is_empty() {
                            cycle.push(parse_point(&number, degree)?);
                            number.clear();
                        }
                    }
                    Some(c) => return Err(fail(&format!("unexpected character '{c}'"))),
                }
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return Err(fail("point repeated inside a cycle"));
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        let mut result = Perm::identity(degree);
        for cycle in &cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            result = result.compose(&Perm { images });
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// 0 for even permutations, 1 for odd ones.
    pub fn parity(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| (c.len() - 1) % 2)
            .sum::<usize>()
            % 2
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut point = self.images[start];
            while point != start {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

fn parse_point(text: &str, degree: usize) -> Result<usize, GroupError> {
    let value: usize = text.parse().map_err(|_| GroupError::NotAPermutation {
        degree,
        reason: format!("bad point '{text}'"),
    })?;
    if value == 0 || value > degree {
        return Err(GroupError::NotAPermutation {
            degree,
            reason: format!("point {value} outside 1..={degree}"),
        });
    }
    Ok(value - 1)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, point) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", point + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        let q = Perm::parse("(1,2,3,4)", 4).unwrap();
        assert_eq!(q.to_string(), "(1 2 3 4)");
        assert_eq!(Perm::parse("()", 4).unwrap(), Perm::identity(4));
    }

    #[test]
    fn compose_applies_right_then_left() {
        // (1 2) after (1 2 3 4): 1->2->1, 2->3, 3->4, 4->1->2.
        let s = Perm::parse("(1 2)", 4).unwrap();
        let r = Perm::parse("(1 2 3 4)", 4).unwrap();
        let sr = s.compose(&r);
        assert_eq!(sr.apply(0), 0);
        assert_eq!(sr.apply(1), 2);
        assert_eq!(sr.apply(2), 3);
        assert_eq!(sr.apply(3), 1);
    }

    #[test]
    fn parity_distinguishes_transpositions_from_cycles() {
        assert_eq!(Perm::parse("(1 2)", 4).unwrap().parity(), 1);
        assert_eq!(Perm::parse("(1 2 3)", 4).unwrap().parity(), 0);
        assert_eq!(Perm::parse("(1 2 3 4)", 4).unwrap().parity(), 1);
        assert_eq!(Perm::parse("(1 2)(3 4)", 4).unwrap().parity(), 0);
    }

    #[test]
    fn parse_rejects_bad_points() {
        assert!(Perm::parse("(0 1)", 4).is_err());
        assert!(Perm::parse("(1 5)", 4).is_err());
        assert!(Perm::parse("(1 1)", 4).is_err());
        assert!(Perm::parse("(1 2", 4).is_err());
    }

    #[test]
    fn inverse_undoes() {
        let p = Perm::parse("(1 2 3 4)", 4).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
