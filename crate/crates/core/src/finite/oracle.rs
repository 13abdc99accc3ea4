//! Brute-force twisted conjugacy data for enumerated groups.

use serde::{Deserialize, Serialize};

use super::auto::{AutoDescriptor, FiniteAutomorphism};
use super::dsu::Dsu;
use super::group::{FiniteGroup, GroupKind, GroupType, Mat};
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistedPartition {
    pub group: GroupType,
    pub automorphism: AutoDescriptor,
    /// Ascending id lists, ordered by least member.
    pub classes: Vec<Vec<u32>>,
    pub reidemeister_number: usize,
}

impl TwistedPartition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self) -> Vec<u32> {
        let n: usize = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (c, members) in self.classes.iter().enumerate() {
            for &x in members {
                out[x as usize] = c as u32;
            }
        }
        out
    }
}

/// Orbits of `x ↦ z x φ(z)^{-1}`, closing over a generating set of the group.
pub fn twisted_partition(phi: &FiniteAutomorphism, exec: Execution) -> TwistedPartition {
    let g = phi.group();
    let moves: Vec<(Mat, Mat)> = g
        .generators()
        .into_iter()
        .map(|z| {
            let pz_inv = g.inv(&phi.apply(&z));
            (z, pz_inv)
        })
        .collect();
    let neighbours = exec.map_range(g.order(), |x| {
        let m = g.element(x as u32);
        moves
            .iter()
            .map(|(z, pz_inv)| g.id_of(&g.mul(&g.mul(z, m), pz_inv)).expect("closed"))
            .collect::<Vec<u32>>()
    });
    let mut dsu = Dsu::new(g.order());
    for (x, ys) in neighbours.iter().enumerate() {
        for &y in ys {
            dsu.union(x as u32, y);
        }
    }
    let classes = dsu.classes();
    TwistedPartition {
        group: g.ty(),
        automorphism: phi.descriptor().clone(),
        reidemeister_number: classes.len(),
        classes,
    }
}

/// `[e]_φ = { z φ(z)^{-1} }`, as a membership mask.
pub fn unit_class(phi: &FiniteAutomorphism, exec: Execution) -> Vec<bool> {
    let g = phi.group();
    let ids = exec.map_range(g.order(), |z| {
        let m = g.element(z as u32);
        g.id_of(&g.mul(m, &g.inv(&phi.apply(m)))).expect("closed")
    });
    let mut mask = vec![false; g.order()];
    for id in ids {
        mask[id as usize] = true;
    }
    mask
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientCheck {
    pub r_group: usize,
    pub r_quotient: usize,
    pub holds: bool,
}

/// `R(ψ) ≤ R(φ)` for the map `ψ` induced on the determinant quotient.
pub fn quotient_check(phi: &FiniteAutomorphism, exec: Execution) -> QuotientCheck {
    let g = phi.group();
    let r_group = twisted_partition(phi, exec).reidemeister_number;
    let r_quotient = match g.ty().kind {
        GroupKind::SL => 1,
        GroupKind::GL => {
            let f = g.field();
            let q = f.order() as u8;
            // F_q^* indexed by a - 1
            let mut dsu = Dsu::new(q as usize - 1);
            for z in 1..q {
                let w = f.times(z, f.recip(phi.on_determinant(z)));
                for a in 1..q {
                    dsu.union(a as u32 - 1, f.times(a, w) as u32 - 1);
                }
            }
            dsu.classes().len()
        }
    };
    QuotientCheck {
        r_group,
        r_quotient,
        holds: r_quotient <= r_group,
    }
}

/// Subgroup generated by `gens`, as a mask, by right multiplication.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[u32]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    let e = g.identity_id();
    mask[e as usize] = true;
    let mut stack = vec![e];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul_id(x, s);
            if !mask[y as usize] {
                mask[y as usize] = true;
                stack.push(y);
            }
        }
    }
    mask
}

/// Subgroup generated by the masked elements, returning the mask and a
/// small generating subset picked greedily in id order.
fn generated(g: &FiniteGroup, set: &[bool]) -> (Vec<bool>, Vec<u32>) {
    let mut gens = Vec::new();
    let mut h = subgroup_closure(g, &gens);
    for (x, &inside) in set.iter().enumerate() {
        if inside && !h[x] {
            gens.push(x as u32);
            h = subgroup_closure(g, &gens);
        }
    }
    (h, gens)
}

fn normalized_by(g: &FiniteGroup, h: &[bool], h_gens: &[u32], conjugators: &[Mat]) -> bool {
    conjugators.iter().all(|c| {
        let c_inv = g.inv(c);
        h_gens.iter().all(|&x| {
            let y = g.mul(&g.mul(c, g.element(x)), &c_inv);
            h[g.id_of(&y).expect("closed") as usize]
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnitClassSubgroup {
    pub class_size: usize,
    pub subgroup: Vec<u32>,
    pub index: usize,
    pub is_normal: bool,
}

/// `⟨[e]_φ⟩` and whether it is normal.
pub fn unit_class_subgroup(phi: &FiniteAutomorphism, exec: Execution) -> UnitClassSubgroup {
    let g = phi.group();
    let class = unit_class(phi, exec);
    let (h, h_gens) = generated(g, &class);
    let subgroup: Vec<u32> = (0..g.order() as u32).filter(|&x| h[x as usize]).collect();
    UnitClassSubgroup {
        class_size: class.iter().filter(|&&b| b).count(),
        index: g.order() / subgroup.len(),
        is_normal: normalized_by(g, &h, &h_gens, &g.generators()),
        subgroup,
    }
}

/// The commutator subgroup, as the normal closure of generator commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> Vec<bool> {
    let gens = g.generators();
    let mut seed = vec![false; g.order()];
    for a in &gens {
        for b in &gens {
            let c = g.mul(&g.mul(a, b), &g.inv(&g.mul(b, a)));
            seed[g.id_of(&c).expect("closed") as usize] = true;
        }
    }
    loop {
        let (h, h_gens) = generated(g, &seed);
        let mut grew = false;
        for c in &gens {
            let c_inv = g.inv(c);
            for &x in &h_gens {
                let y = g.id_of(&g.mul(&g.mul(c, g.element(x)), &c_inv)).expect("closed");
                if !h[y as usize] {
                    seed[y as usize] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return h;
        }
        for (s, &inside) in seed.iter_mut().zip(&h) {
            *s |= inside;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WidthProfile {
    pub generates: bool,
    /// Least `k` with `S^k = G`, where `S = [e]_φ ∪ [e]_φ^{-1}`.
    pub width: Option<usize>,
    /// `|S|, |S^2|, …` up to stabilization.
    pub layer_sizes: Vec<usize>,
}

pub fn width_profile(phi: &FiniteAutomorphism, exec: Execution) -> WidthProfile {
    let g = phi.group();
    let class = unit_class(phi, exec);
    let mut s_mask = class.clone();
    for (x, &inside) in class.iter().enumerate() {
        if inside {
            let inv = g.id_of(&g.inv(g.element(x as u32))).expect("closed");
            s_mask[inv as usize] = true;
        }
    }
    let s: Vec<Mat> = (0..g.order()).filter(|&x| s_mask[x]).map(|x| *g.element(x as u32)).collect();
    // e ∈ S, so S^k ⊆ S^{k+1} and only the newest layer needs extending
    let mut seen = s_mask;
    let mut frontier: Vec<u32> = (0..g.order() as u32).filter(|&x| seen[x as usize]).collect();
    let mut total = frontier.len();
    let mut layer_sizes = vec![total];
    loop {
        let products = exec.map_range(frontier.len(), |i| {
            let x = g.element(frontier[i]);
            s.iter().map(|t| g.id_of(&g.mul(x, t)).expect("closed")).collect::<Vec<u32>>()
        });
        let mut next = Vec::new();
        for y in products.into_iter().flatten() {
            if !seen[y as usize] {
                seen[y as usize] = true;
                next.push(y);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        total += next.len();
        layer_sizes.push(total);
        frontier = next;
    }
    let generates = total == g.order();
    WidthProfile {
        generates,
        width: generates.then_some(layer_sizes.len()),
        layer_sizes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiniteReport {
    pub group: GroupType,
    pub order: usize,
    pub automorphism: String,
    pub reidemeister_number: usize,
    pub class_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_class_subgroup: Option<UnitClassSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<WidthProfile>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnitClassSummary {
    pub class_size: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub is_normal: bool,
}

impl From<&UnitClassSubgroup> for UnitClassSummary {
    fn from(u: &UnitClassSubgroup) -> Self {
        UnitClassSummary {
            class_size: u.class_size,
            subgroup_order: u.subgroup.len(),
            index: u.index,
            is_normal: u.is_normal,
        }
    }
}

impl FiniteReport {
    pub fn reidemeister(phi: &FiniteAutomorphism, exec: Execution) -> Self {
        let part = twisted_partition(phi, exec);
        let q = quotient_check(phi, exec);
        let u = unit_class_subgroup(phi, exec);
        FiniteReport {
            group: part.group,
            order: phi.group().order(),
            automorphism: part.automorphism.to_string(),
            reidemeister_number: part.reidemeister_number,
            class_sizes: part.class_sizes(),
            quotient: Some(q),
            unit_class_subgroup: Some((&u).into()),
            width: None,
        }
    }

    pub fn width(phi: &FiniteAutomorphism, exec: Execution) -> Self {
        let part = twisted_partition(phi, exec);
        FiniteReport {
            group: part.group,
            order: phi.group().order(),
            automorphism: part.automorphism.to_string(),
            reidemeister_number: part.reidemeister_number,
            class_sizes: part.class_sizes(),
            quotient: None,
            unit_class_subgroup: None,
            width: Some(width_profile(phi, exec)),
        }
    }
}
