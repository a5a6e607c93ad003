//! Group builders: cyclic, dihedral, dicyclic, symmetric and alternating
//! groups, direct and semidirect products, permutation closures and raw
//! Cayley tables.
//!
//! Element numbering is deterministic: breadth-first discovery order for
//! permutation groups, lexicographic pair order `(a, b) -> a * |B| + b` for
//! products.

use std::collections::{HashMap, VecDeque};

use crate::arith::{gcd, mod_inverse, mod_pow};
use crate::error::GroupError;
use crate::group::{Element, Group, Limits};

/// Builders bound to a set of [`Limits`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Builder {
    pub limits: Limits,
}

impl Builder {
    pub fn new(limits: Limits) -> Self {
        Builder { limits }
    }

    pub fn cyclic(&self, n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter(
                "cyclic group needs n >= 1".into(),
            ));
        }
        self.limits.check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(((i + j) % n) as u32);
            }
        }
        let gens = if n > 1 { vec![Element::new(1)] } else { vec![] };
        Group::from_table(format!("C{n}"), n, table, gens, &self.limits)
    }

    /// Dihedral group of order `2n` (symmetries of an `n`-gon).
    pub fn dihedral(&self, n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter(
                "dihedral group needs n >= 1".into(),
            ));
        }
        let mut g = self.semidirect_cyclic(n, 2, n - 1)?;
        g.set_label(format!("D{}", 2 * n));
        Ok(g)
    }

    /// Dicyclic group of order `4n`: `<a, x | a^2n = 1, x^2 = a^n, a^x = a^-1>`.
    /// `n = 2` gives the quaternion group Q8, powers of two give the
    /// generalized quaternion groups.
    pub fn quaternion(&self, n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter(
                "dicyclic group needs n >= 1".into(),
            ));
        }
        let order = 4 * n;
        self.limits.check_order(order)?;
        let m = 2 * n;
        // element a^i x^j has index 2i + j
        let idx = |i: usize, j: usize| (2 * (i % m) + j) as u32;
        let mut table = vec![0u32; order * order];
        for i in 0..m {
            for j in 0..2 {
                for k in 0..m {
                    for l in 0..2 {
                        let v = match (j, l) {
                            (0, l) => idx(i + k, l),
                            (1, 0) => idx(i + m - k, 1),
                            _ => idx(i + m - k + n, 0),
                        };
                        table[(2 * i + j) * order + 2 * k + l] = v;
                    }
                }
            }
        }
        let label = if n.is_power_of_two() && n >= 2 {
            format!("Q{order}")
        } else {
            format!("Dic{n}")
        };
        let gens = vec![Element::new(2), Element::new(1)];
        Group::from_table(label, order, table, gens, &self.limits)
    }

    pub fn symmetric(&self, degree: usize) -> Result<Group, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidParameter(
                "symmetric group needs degree >= 1".into(),
            ));
        }
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if degree >= 3 {
            gens.push((0..degree).map(|i| (i + 1) % degree).collect());
        }
        let mut g = self.from_permutations(degree, &gens)?;
        g.set_label(format!("S{degree}"));
        Ok(g)
    }

    pub fn alternating(&self, degree: usize) -> Result<Group, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidParameter(
                "alternating group needs degree >= 1".into(),
            ));
        }
        let gens: Vec<Vec<usize>> = (2..degree)
            .map(|k| {
                let mut p: Vec<usize> = (0..degree).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        let mut g = self.from_permutations(degree, &gens)?;
        g.set_label(format!("A{degree}"));
        Ok(g)
    }

    /// `A x B` with `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(&self, a: &Group, b: &Group) -> Result<Group, GroupError> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        self.limits.check_order(n)?;
        let mut table = vec![0u32; n * n];
        for a1 in 0..na {
            for b1 in 0..nb {
                let row = (a1 * nb + b1) * n;
                for a2 in 0..na {
                    let pa = a.mul(Element::new(a1), Element::new(a2)).index();
                    for b2 in 0..nb {
                        let pb = b.mul(Element::new(b1), Element::new(b2)).index();
                        table[row + a2 * nb + b2] = (pa * nb + pb) as u32;
                    }
                }
            }
        }
        let mut gens: Vec<Element> = a
            .generators()
            .iter()
            .map(|g| Element::new(g.index() * nb))
            .collect();
        gens.extend(b.generators().iter().copied());
        Group::from_table(
            format!("{} x {}", a.label(), b.label()),
            n,
            table,
            gens,
            &self.limits,
        )
    }

    /// `<x> : <y>` with `x^n = y^m = 1` and `x^y = x^e`.
    ///
    /// Element `x^a y^b` has index `a * m + b`.
    pub fn semidirect_cyclic(&self, n: usize, m: usize, e: usize) -> Result<Group, GroupError> {
        if n == 0 || m == 0 {
            return Err(GroupError::InvalidParameter(
                "n and m must be positive".into(),
            ));
        }
        let e = e % n;
        if gcd(e, n) != 1 {
            return Err(GroupError::InvalidAction(format!(
                "exponent {e} is not a unit modulo {n}"
            )));
        }
        if mod_pow(e, m, n) != 1 % n {
            return Err(GroupError::InvalidAction(format!(
                "{e}^{m} is not 1 modulo {n}, so y -> (x -> x^{e}) is not a homomorphism"
            )));
        }
        let order = n * m;
        self.limits.check_order(order)?;
        // y^b x y^-b = x^(e^-b)
        let e_inv = mod_inverse(e, n).expect("unit");
        let twist: Vec<usize> = (0..m).map(|b| mod_pow(e_inv, b, n)).collect();
        let mut table = vec![0u32; order * order];
        for a in 0..n {
            for (b, &t) in twist.iter().enumerate() {
                let row = (a * m + b) * order;
                for c in 0..n {
                    let x = (a + c * t) % n;
                    for d in 0..m {
                        table[row + c * m + d] = (x * m + (b + d) % m) as u32;
                    }
                }
            }
        }
        let gens = vec![Element::new(m % order), Element::new(1 % order)];
        Group::from_table(format!("C{n}:C{m}[{e}]"), order, table, gens, &self.limits)
    }

    /// `N : H` where `action[h]` is the automorphism of `N` (as an image
    /// array over N's indices) attached to element `h` of `H`.
    ///
    /// The action must be a homomorphism in the sense
    /// `action[h1 * h2] = action[h1] o action[h2]` (apply `h2` first), and
    /// the product is `(n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 * h2)`.
    /// With the trivial action the table equals [`Builder::direct_product`]'s.
    pub fn semidirect_table(
        &self,
        normal: &Group,
        acting: &Group,
        action: &[Vec<usize>],
    ) -> Result<Group, GroupError> {
        let (nn, nh) = (normal.order(), acting.order());
        validate_action(normal, acting, action)?;
        let n = nn * nh;
        self.limits.check_order(n)?;
        let mut table = vec![0u32; n * n];
        for n1 in 0..nn {
            for (h1, phi) in action.iter().enumerate() {
                let row = (n1 * nh + h1) * n;
                for n2 in 0..nn {
                    let pn = normal.mul(Element::new(n1), Element::new(phi[n2])).index();
                    for h2 in 0..nh {
                        let ph = acting.mul(Element::new(h1), Element::new(h2)).index();
                        table[row + n2 * nh + h2] = (pn * nh + ph) as u32;
                    }
                }
            }
        }
        let mut gens: Vec<Element> = normal
            .generators()
            .iter()
            .map(|g| Element::new(g.index() * nh))
            .collect();
        gens.extend(acting.generators().iter().copied());
        Group::from_table(
            format!("({}) : ({})", normal.label(), acting.label()),
            n,
            table,
            gens,
            &self.limits,
        )
    }

    /// The permutation group generated by `gens`, enumerated breadth-first
    /// from the identity by right multiplication with the generators.
    pub fn from_permutations(
        &self,
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Group, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidParameter(
                "degree must be positive".into(),
            ));
        }
        for (k, p) in gens.iter().enumerate() {
            check_permutation(degree, p)
                .map_err(|m| GroupError::InvalidPermutation(format!("generator {k}: {m}")))?;
        }
        let gens: Vec<Vec<u16>> = gens
            .iter()
            .map(|p| p.iter().map(|&v| v as u16).collect())
            .collect();
        let identity: Vec<u16> = (0..degree as u16).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u16>, u32> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let p = compose(&elements[i], s);
                if !index.contains_key(&p) {
                    if elements.len() == self.limits.order_cap {
                        return Err(GroupError::OrderCap {
                            order: elements.len() + 1,
                            cap: self.limits.order_cap,
                        });
                    }
                    index.insert(p.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&compose(&elements[i], &elements[j])];
            }
        }
        let gen_elems = gens
            .iter()
            .map(|s| Element::new(index[s] as usize))
            .collect();
        Group::from_table(
            format!("perm group of order {n}"),
            n,
            table,
            gen_elems,
            &self.limits,
        )
    }

    /// A group from explicit table rows; index 0 must be the identity.
    pub fn from_cayley_table(&self, rows: &[Vec<usize>]) -> Result<Group, GroupError> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(GroupError::InvalidTable(format!("entry {v} out of range")));
                }
                table.push(v as u32);
            }
        }
        Group::from_table(
            format!("table group of order {n}"),
            n,
            table,
            vec![],
            &self.limits,
        )
    }
}

/// `(p then q)` on image arrays: `i -> q[p[i]]`.
fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    p.iter().map(|&i| q[i as usize]).collect()
}

fn check_permutation(degree: usize, p: &[usize]) -> Result<(), String> {
    if p.len() != degree {
        return Err(format!("expected {degree} images, found {}", p.len()));
    }
    let mut seen = vec![false; degree];
    for &v in p {
        if v >= degree {
            return Err(format!("image {v} outside 0..{degree}"));
        }
        if seen[v] {
            return Err(format!("image {v} repeated"));
        }
        seen[v] = true;
    }
    Ok(())
}

/// True when the image array `phi` is an automorphism of `g`.
pub fn is_automorphism(g: &Group, phi: &[usize]) -> bool {
    if check_permutation(g.order(), phi).is_err() {
        return false;
    }
    g.elements().all(|a| {
        g.elements().all(|b| {
            phi[g.mul(a, b).index()]
                == g.mul(Element::new(phi[a.index()]), Element::new(phi[b.index()]))
                    .index()
        })
    })
}

fn validate_action(
    normal: &Group,
    acting: &Group,
    action: &[Vec<usize>],
) -> Result<(), GroupError> {
    let (nn, nh) = (normal.order(), acting.order());
    if action.len() != nh {
        return Err(GroupError::InvalidAction(format!(
            "expected {nh} automorphisms, one per acting element, found {}",
            action.len()
        )));
    }
    for (h, phi) in action.iter().enumerate() {
        if phi.len() != nn || !is_automorphism(normal, phi) {
            return Err(GroupError::InvalidAction(format!(
                "image of acting element {h} is not an automorphism"
            )));
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h12 = acting.mul(Element::new(h1), Element::new(h2)).index();
            for k in 0..nn {
                if action[h12][k] != action[h1][action[h2][k]] {
                    return Err(GroupError::InvalidAction(format!(
                        "map is not a homomorphism at ({h1}, {h2})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Extends an assignment on `g`'s generators to a map on all of `g`, then
/// checks it is an automorphism. `images[i]` is the image of
/// `g.generators()[i]`.
pub fn extend_to_automorphism(g: &Group, images: &[Element]) -> Option<Vec<usize>> {
    let gens = g.generators();
    if images.len() != gens.len() {
        return None;
    }
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    let mut queue = VecDeque::from([Element::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = Element::new(phi[x.index()]);
        for (s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, *s);
            let fy = g.mul(fx, t).index();
            if phi[y.index()] == usize::MAX {
                phi[y.index()] = fy;
                queue.push_back(y);
            } else if phi[y.index()] != fy {
                return None;
            }
        }
    }
    is_automorphism(g, &phi).then_some(phi)
}

/// The action table for a homomorphism from `acting` into the automorphisms
/// of `normal`, given by the images of `acting`'s generators.
pub fn action_from_generators(
    normal: &Group,
    acting: &Group,
    gen_images: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>, GroupError> {
    let gens = acting.generators();
    if gen_images.len() != gens.len() {
        return Err(GroupError::InvalidAction(format!(
            "expected {} generator images, found {}",
            gens.len(),
            gen_images.len()
        )));
    }
    let nn = normal.order();
    let mut action: Vec<Option<Vec<usize>>> = vec![None; acting.order()];
    action[0] = Some((0..nn).collect());
    let mut queue = VecDeque::from([Element::IDENTITY]);
    while let Some(h) = queue.pop_front() {
        let current = action[h.index()].clone().expect("visited");
        for (s, img) in gens.iter().zip(gen_images) {
            let hs = acting.mul(h, *s);
            // action[h s] = action[h] o action[s]
            let composed: Vec<usize> = (0..nn).map(|k| current[img[k]]).collect();
            match &action[hs.index()] {
                None => {
                    action[hs.index()] = Some(composed);
                    queue.push_back(hs);
                }
                Some(existing) if *existing != composed => {
                    return Err(GroupError::InvalidAction(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
                Some(_) => {}
            }
        }
    }
    let action: Vec<Vec<usize>> = action
        .into_iter()
        .map(|a| a.expect("generators span"))
        .collect();
    validate_action(normal, acting, &action)?;
    Ok(action)
}

pub fn cyclic(n: usize) -> Result<Group, GroupError> {
    Builder::default().cyclic(n)
}

pub fn dihedral(n: usize) -> Result<Group, GroupError> {
    Builder::default().dihedral(n)
}

pub fn quaternion(n: usize) -> Result<Group, GroupError> {
    Builder::default().quaternion(n)
}

pub fn symmetric(degree: usize) -> Result<Group, GroupError> {
    Builder::default().symmetric(degree)
}

pub fn alternating(degree: usize) -> Result<Group, GroupError> {
    Builder::default().alternating(degree)
}

pub fn direct_product(a: &Group, b: &Group) -> Result<Group, GroupError> {
    Builder::default().direct_product(a, b)
}

pub fn semidirect_cyclic(n: usize, m: usize, e: usize) -> Result<Group, GroupError> {
    Builder::default().semidirect_cyclic(n, m, e)
}

pub fn semidirect_table(
    normal: &Group,
    acting: &Group,
    action: &[Vec<usize>],
) -> Result<Group, GroupError> {
    Builder::default().semidirect_table(normal, acting, action)
}

pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Group, GroupError> {
    Builder::default().from_permutations(degree, gens)
}

pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Group, GroupError> {
    Builder::default().from_cayley_table(rows)
}

/// The action of `C3` on `Q8` cycling `i -> j -> k`.
pub fn sl23_action() -> Result<(Group, Group, Vec<Vec<usize>>), GroupError> {
    let q8 = quaternion(2)?;
    let c3 = cyclic(3)?;
    // generators of Q8 are a = i (index 2) and x = j (index 1); k = i j
    let (i, j) = (q8.generators()[0], q8.generators()[1]);
    let k = q8.mul(i, j);
    let phi = extend_to_automorphism(&q8, &[j, k])
        .ok_or_else(|| GroupError::InvalidAction("i -> j, j -> k is not an automorphism".into()))?;
    let action = action_from_generators(&q8, &c3, &[phi])?;
    Ok((q8, c3, action))
}

/// `SL(2,3)` as `Q8 : C3`.
pub fn sl23() -> Result<Group, GroupError> {
    let (q8, c3, action) = sl23_action()?;
    let mut g = semidirect_table(&q8, &c3, &action)?;
    g.set_label("SL(2,3)");
    Ok(g)
}
