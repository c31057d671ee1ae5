//! Coprime step directions and the Farey machinery behind them.
//!
//! The grid networks connect each bin to its translates by a fixed set of
//! step vectors. `V0` holds the four axis unit steps; `V_L` adds every
//! vector with nonzero coordinates bounded by `L` whose coordinates are
//! coprime, i.e. the lattice points visible from the origin. Restricted to
//! the first octant these directions are in bijection with the Farey
//! sequence of order `L`, which is what makes exact integer cone
//! decompositions possible.

/// An integer step vector; never the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    pub d1: i32,
    pub d2: i32,
}

impl Direction {
    pub fn new(d1: i32, d2: i32) -> Self {
        assert!(d1 != 0 || d2 != 0, "the zero vector is not a direction");
        Self { d1, d2 }
    }

    /// Euclidean length of the step.
    pub fn euclidean_len(&self) -> f64 {
        ((self.d1 as f64).powi(2) + (self.d2 as f64).powi(2)).sqrt()
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// True iff no lattice point lies strictly between the origin and `(d1, d2)`,
/// i.e. `gcd(|d1|, |d2|) = 1` with the convention `gcd(k, 0) = k`.
///
/// Panics on the zero vector, which has no direction.
pub fn is_visible(d1: i64, d2: i64) -> bool {
    assert!(d1 != 0 || d2 != 0, "the zero vector is not a direction");
    gcd_u64(d1.unsigned_abs(), d2.unsigned_abs()) == 1
}

/// Which half of the plane a vector points into, for angle sorting:
/// 0 covers angles in [0, pi), 1 covers [pi, 2pi).
fn half(d: &Direction) -> u8 {
    if d.d2 > 0 || (d.d2 == 0 && d.d1 > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &Direction, b: &Direction) -> i64 {
    a.d1 as i64 * b.d2 as i64 - a.d2 as i64 * b.d1 as i64
}

/// Orders directions by angle from the positive x-axis, counterclockwise,
/// using exact integer arithmetic only.
pub fn angle_order(a: &Direction, b: &Direction) -> std::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| cross(b, a).cmp(&0))
}

/// The direction set inducing the grid networks: `V0` for `L = 0`, `V_L`
/// for `L >= 1`, sorted by angle (distinct members never share a ray, so
/// the order is total).
pub fn direction_set(level: u32) -> Vec<Direction> {
    let mut dirs = vec![
        Direction::new(1, 0),
        Direction::new(0, 1),
        Direction::new(-1, 0),
        Direction::new(0, -1),
    ];
    let l = level as i32;
    for d1 in 1..=l {
        for d2 in 1..=l {
            if gcd_u64(d1 as u64, d2 as u64) == 1 {
                dirs.push(Direction::new(d1, d2));
                dirs.push(Direction::new(-d1, d2));
                dirs.push(Direction::new(d1, -d2));
                dirs.push(Direction::new(-d1, -d2));
            }
        }
    }
    dirs.sort_by(angle_order);
    dirs
}

/// A reduced fraction in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyFraction {
    pub num: u32,
    pub den: u32,
}

impl std::fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// All reduced fractions in [0, 1] with denominator at most `order`, in
/// strictly increasing order, via the standard next-term recurrence.
pub fn farey_sequence(order: u32) -> Vec<FareyFraction> {
    assert!(order >= 1, "Farey sequence needs order >= 1");
    let mut seq = vec![FareyFraction { num: 0, den: 1 }];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order as u64);
    while c <= order as u64 {
        let k = (order as u64 + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
        seq.push(FareyFraction {
            num: a as u32,
            den: b as u32,
        });
    }
    seq
}

/// First-octant members of `V_L` (coordinates `d1 >= d2 >= 0`), in
/// increasing slope order. The slope map onto the Farey sequence of the same
/// order is a bijection: fraction `p/q` corresponds to the vector `(q, p)`.
pub fn octant_directions(level: u32) -> Vec<Direction> {
    farey_sequence(level)
        .into_iter()
        .map(|f| Direction::new(f.den as i32, f.num as i32))
        .collect()
}

/// Writes `k` (inside the first octant, `k1 >= k2 >= 0`, nonzero) as
/// `A * i + B * j` with non-negative integers `A`, `B` and `i`, `j` the
/// adjacent pair of octant directions bracketing the slope of `k`.
///
/// Farey adjacency gives `i1 * j2 - i2 * j1 = 1`, so the 2x2 system solves
/// in exact integer arithmetic.
pub fn cone_decompose(k: Direction, level: u32) -> (u64, Direction, u64, Direction) {
    assert!(
        k.d1 >= k.d2 && k.d2 >= 0 && k.d1 > 0,
        "cone_decompose needs a nonzero first-octant vector, got ({}, {})",
        k.d1,
        k.d2
    );
    let octant = octant_directions(level);
    // Largest index with slope(octant[idx]) <= slope(k); slopes are sorted.
    let mut idx = 0;
    for (m, dir) in octant.iter().enumerate() {
        // p/q <= k2/k1  <=>  p * k1 <= q * k2
        if (dir.d2 as i64) * (k.d1 as i64) <= (dir.d1 as i64) * (k.d2 as i64) {
            idx = m;
        } else {
            break;
        }
    }
    let idx = idx.min(octant.len() - 2);
    let i = octant[idx];
    let j = octant[idx + 1];
    debug_assert_eq!(cross(&i, &j), 1, "bracketing pair must be unimodular");
    let a = (j.d2 as i64) * (k.d1 as i64) - (j.d1 as i64) * (k.d2 as i64);
    let b = (i.d1 as i64) * (k.d2 as i64) - (i.d2 as i64) * (k.d1 as i64);
    debug_assert!(a >= 0 && b >= 0);
    (a as u64, i, b as u64, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v0_is_the_four_axis_steps() {
        let v0 = direction_set(0);
        assert_eq!(
            v0,
            vec![
                Direction::new(1, 0),
                Direction::new(0, 1),
                Direction::new(-1, 0),
                Direction::new(0, -1),
            ]
        );
    }

    #[test]
    fn v1_has_eight_members_in_angle_order() {
        let v1 = direction_set(1);
        assert_eq!(
            v1,
            vec![
                Direction::new(1, 0),
                Direction::new(1, 1),
                Direction::new(0, 1),
                Direction::new(-1, 1),
                Direction::new(-1, 0),
                Direction::new(-1, -1),
                Direction::new(0, -1),
                Direction::new(1, -1),
            ]
        );
    }

    #[test]
    fn v2_has_sixteen_members() {
        let v2 = direction_set(2);
        assert_eq!(v2.len(), 16);
        // Brute-force reference: V0 plus coprime pairs with nonzero coords <= 2.
        let mut expected = vec![(1, 0), (0, 1), (-1, 0), (0, -1)];
        for d1 in -2i32..=2 {
            for d2 in -2i32..=2 {
                if d1 != 0
                    && d2 != 0
                    && gcd_u64(d1.unsigned_abs() as u64, d2.unsigned_abs() as u64) == 1
                {
                    expected.push((d1, d2));
                }
            }
        }
        let got: std::collections::HashSet<(i32, i32)> = v2.iter().map(|d| (d.d1, d.d2)).collect();
        assert_eq!(got, expected.into_iter().collect());
    }

    #[test]
    fn direction_sets_are_nested() {
        let mut prev: std::collections::HashSet<(i32, i32)> = std::collections::HashSet::new();
        for l in 0..=8 {
            let cur: std::collections::HashSet<(i32, i32)> =
                direction_set(l).iter().map(|d| (d.d1, d.d2)).collect();
            assert!(
                prev.is_subset(&cur),
                "V_{} not contained in V_{l}",
                l.max(1) - 1
            );
            prev = cur;
        }
    }

    #[test]
    fn visibility_matches_gcd() {
        assert!(is_visible(2, 3));
        assert!(!is_visible(2, 4));
        assert!(is_visible(1, 0));
        assert!(!is_visible(3, 0));
        assert!(is_visible(-3, 2));
    }

    #[test]
    #[should_panic(expected = "zero vector")]
    fn visibility_rejects_zero() {
        is_visible(0, 0);
    }

    #[test]
    fn farey_first_three_orders() {
        let f = |n, d| FareyFraction { num: n, den: d };
        assert_eq!(farey_sequence(1), vec![f(0, 1), f(1, 1)]);
        assert_eq!(farey_sequence(2), vec![f(0, 1), f(1, 2), f(1, 1)]);
        assert_eq!(
            farey_sequence(3),
            vec![f(0, 1), f(1, 3), f(1, 2), f(2, 3), f(1, 1)]
        );
    }

    #[test]
    fn farey_neighbors_are_unimodular() {
        for order in 1..=16 {
            let seq = farey_sequence(order);
            assert!(seq.windows(2).all(|w| {
                w[1].num as u64 * w[0].den as u64 - w[0].num as u64 * w[1].den as u64 == 1
            }));
            // Strictly increasing, all reduced, all in [0, 1].
            assert!(seq.windows(2).all(|w| {
                (w[0].num as u64) * (w[1].den as u64) < (w[1].num as u64) * (w[0].den as u64)
            }));
            assert!(seq
                .iter()
                .all(|f| f.num <= f.den && gcd_u64(f.num as u64, f.den as u64) == 1));
        }
    }

    #[test]
    fn octant_is_in_bijection_with_farey() {
        for l in 1..=12 {
            let octant = octant_directions(l);
            let farey = farey_sequence(l);
            assert_eq!(octant.len(), farey.len());
            // Same slopes, and every member is in V_L's octant restriction.
            let from_set: Vec<Direction> = direction_set(l)
                .into_iter()
                .filter(|d| d.d1 >= d.d2 && d.d2 >= 0)
                .collect();
            assert_eq!(from_set.len(), octant.len());
            for (o, f) in octant.iter().zip(&farey) {
                assert_eq!((o.d1 as u32, o.d2 as u32), (f.den, f.num));
            }
        }
    }

    #[test]
    fn lattice_points_are_multiples_of_visible_ones() {
        // Every j in {0..L-1}^2 is m * i for some i in V_{L-1}.
        for l in 2u32..=16 {
            let set: std::collections::HashSet<(i32, i32)> =
                direction_set(l - 1).iter().map(|d| (d.d1, d.d2)).collect();
            for j1 in 0..l as i32 {
                for j2 in 0..l as i32 {
                    if j1 == 0 && j2 == 0 {
                        continue; // m = 0 works for any direction
                    }
                    let g = gcd_u64(j1 as u64, j2 as u64) as i32;
                    assert!(set.contains(&(j1 / g, j2 / g)), "({j1},{j2}) at L={l}");
                }
            }
        }
    }

    #[test]
    fn cone_decompose_matches_spec_cases() {
        // k = (2L, 1): L steps along (1,0) plus one (L,1) step.
        for l in 1..=6u32 {
            let (a, i, b, j) = cone_decompose(Direction::new(2 * l as i32, 1), l);
            assert_eq!(
                (a, i, b, j),
                (
                    l as u64,
                    Direction::new(1, 0),
                    1,
                    Direction::new(l as i32, 1)
                )
            );
        }
        // Axis multiples decompose with B = 0.
        let (a, i, b, _) = cone_decompose(Direction::new(3, 0), 4);
        assert_eq!((a, i, b), (3, Direction::new(1, 0), 0));
        // k = (5, 3) at L = 2 sits between slopes 1/2 and 1/1.
        let (a, i, b, j) = cone_decompose(Direction::new(5, 3), 2);
        assert_eq!((a, i), (2, Direction::new(2, 1)));
        assert_eq!((b, j), (1, Direction::new(1, 1)));
    }

    #[test]
    fn cone_decompose_reconstructs_exhaustively() {
        for l in 1..=8u32 {
            for k1 in 1..=16i32 {
                for k2 in 0..=k1 {
                    let k = Direction::new(k1, k2);
                    let (a, i, b, j) = cone_decompose(k, l);
                    assert_eq!(a as i64 * i.d1 as i64 + b as i64 * j.d1 as i64, k1 as i64);
                    assert_eq!(a as i64 * i.d2 as i64 + b as i64 * j.d2 as i64, k2 as i64);
                    assert_eq!(cross(&i, &j), 1);
                }
            }
        }
    }
}
