//! Simplicial complexes of codes, polar complexes and shellings.
//!
//! Faces are bitsets over at most 128 vertices. For the complex `Δ(C)` of a
//! code, vertex `i` is neuron `i`. For the polar complex `Γ(C)` the on-vertex
//! `i` is bit `i` and the off-vertex `ī` is bit `64 + i`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{Codeword, NeuralCode};

/// Bit offset of off-vertices in polar faces.
pub const OFF: usize = 64;

/// A face, as a set of vertex labels `0..128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        Face(vs.into_iter().fold(0u128, |acc, v| acc | 1 << v))
    }

    pub fn from_codeword(c: Codeword) -> Self {
        Face(c.bits() as u128)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for v in self.vertices() {
            if v >= OFF {
                write!(f, "¬{}", v - OFF)?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    VertexAbsent(usize),
    Impure,
    NotAPermutation,
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::VertexAbsent(v) => write!(f, "vertex {v} is not in the complex"),
            ComplexError::Impure => f.write_str("complex is not pure"),
            ComplexError::NotAPermutation => f.write_str("order is not a permutation of the facets"),
        }
    }
}

impl core::error::Error for ComplexError {}

/// A simplicial complex given by its facets.
///
/// No facets at all is the void complex; the single facet `∅` is the empty
/// complex `{∅}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
}

impl SimplicialComplex {
    pub fn void() -> Self {
        SimplicialComplex { facets: Vec::new() }
    }

    /// The complex generated by `faces`, reduced to its inclusion-maximal faces.
    pub fn from_faces<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut fs: Vec<Face> = faces.into_iter().collect();
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(fs.len());
        for f in fs {
            if !kept.iter().any(|k| f.is_subset(*k)) {
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex { facets: kept }
    }

    pub fn simplex(face: Face) -> Self {
        SimplicialComplex {
            facets: alloc::vec![face],
        }
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |a, f| a.union(*f))
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// A single facet (possibly `∅`) or the void complex.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() <= 1
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Dimension of the largest facet, `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    fn check_vertex(&self, v: usize) -> Result<(), ComplexError> {
        if self.vertices().contains(v) {
            Ok(())
        } else {
            Err(ComplexError::VertexAbsent(v))
        }
    }

    /// `{F ∖ v : v ∈ F ∈ K}`.
    pub fn link(&self, v: usize) -> Result<SimplicialComplex, ComplexError> {
        self.check_vertex(v)?;
        Ok(self.link_unchecked(v))
    }

    /// `{F ∖ v : F ∈ K}`.
    pub fn deletion(&self, v: usize) -> Result<SimplicialComplex, ComplexError> {
        self.check_vertex(v)?;
        Ok(self.deletion_unchecked(v))
    }

    fn link_unchecked(&self, v: usize) -> SimplicialComplex {
        SimplicialComplex::from_faces(self.facets.iter().filter(|f| f.contains(v)).map(|f| f.without(v)))
    }

    fn deletion_unchecked(&self, v: usize) -> SimplicialComplex {
        SimplicialComplex::from_faces(self.facets.iter().map(|f| f.without(v)))
    }

    /// Connected components of the 1-skeleton; isolated vertices are their
    /// own components. The void and empty complexes have none.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let verts: Vec<usize> = self.vertices().vertices().collect();
        let mut parent: BTreeMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
        for f in &self.facets {
            let mut it = f.vertices();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    if a != b {
                        parent.insert(a.max(b), a.min(b));
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
        for f in &self.facets {
            if let Some(v) = f.vertices().next() {
                let r = find(&mut parent, v);
                groups.entry(r).or_default().push(*f);
            }
        }
        groups.into_values().map(SimplicialComplex::from_faces).collect()
    }

    /// True when every clique of the 1-skeleton is a face.
    pub fn is_clique_complex(&self) -> bool {
        let verts = self.vertices();
        let mut adj: BTreeMap<usize, u128> = BTreeMap::new();
        for v in verts.vertices() {
            let nbrs = self
                .facets
                .iter()
                .filter(|f| f.contains(v))
                .fold(0u128, |a, f| a | f.0);
            adj.insert(v, nbrs & !(1 << v));
        }
        // Bron–Kerbosch with pivoting over bitsets; every maximal clique must be a face.
        let mut ok = true;
        bron_kerbosch(0, verts.0, 0, &adj, &mut |clique| {
            if !self.contains_face(Face(clique)) {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Decides vertex decomposability under `rule` and returns a certificate
    /// tree.
    pub fn vertex_decomposition(&self, rule: VdRule) -> Option<VdCertificate> {
        let mut memo = BTreeMap::new();
        if vd(self, rule, &mut memo) {
            Some(certificate(self, rule, &mut memo))
        } else {
            None
        }
    }

    /// Vertex decomposability under [`VdRule::Plain`].
    pub fn is_vertex_decomposable(&self) -> bool {
        self.is_vertex_decomposable_with(VdRule::Plain)
    }

    pub fn is_vertex_decomposable_with(&self, rule: VdRule) -> bool {
        let mut memo = BTreeMap::new();
        vd(self, rule, &mut memo)
    }
}

/// Which recursion defines vertex decomposability.
///
/// Both accept simplices (the void and empty complexes included) and
/// recurse on a vertex `v` whose link and deletion are vertex decomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VdRule {
    /// No further condition on `v`. Link and deletion both lose `v`, so by
    /// induction on the vertex count every complex decomposes; the
    /// certificate tree is the informative part.
    Plain,
    /// `v` must also be a shedding vertex: no face of the link is a facet of
    /// the deletion (the non-pure definition of Björner and Wachs).
    Shedding,
}

fn bron_kerbosch(
    r: u128,
    mut p: u128,
    mut x: u128,
    adj: &BTreeMap<usize, u128>,
    report: &mut dyn FnMut(u128) -> bool,
) -> bool {
    if p == 0 && x == 0 {
        return report(r);
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[&pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let nv = adj[&v];
        if !bron_kerbosch(r | 1 << v, p & nv, x & nv, adj, report) {
            return false;
        }
        p &= !(1 << v);
        x |= 1 << v;
    }
    true
}

/// Certificate of vertex decomposability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdCertificate {
    /// The complex is a simplex; `None` for the void complex.
    Simplex(Option<Face>),
    Shed {
        vertex: usize,
        link: Box<VdCertificate>,
        deletion: Box<VdCertificate>,
    },
}

impl VdCertificate {
    pub fn depth(&self) -> usize {
        match self {
            VdCertificate::Simplex(_) => 0,
            VdCertificate::Shed { link, deletion, .. } => 1 + link.depth().max(deletion.depth()),
        }
    }
}

fn is_shedding(link: &SimplicialComplex, deletion: &SimplicialComplex) -> bool {
    deletion.facets().iter().all(|g| !link.contains_face(*g))
}

fn admissible(rule: VdRule, link: &SimplicialComplex, del: &SimplicialComplex) -> bool {
    match rule {
        VdRule::Plain => true,
        VdRule::Shedding => is_shedding(link, del),
    }
}

fn vd(k: &SimplicialComplex, rule: VdRule, memo: &mut BTreeMap<Vec<Face>, bool>) -> bool {
    if k.is_simplex() {
        return true;
    }
    if let Some(&known) = memo.get(&k.facets) {
        return known;
    }
    let mut result = false;
    for v in k.vertices().vertices() {
        let link = k.link_unchecked(v);
        let del = k.deletion_unchecked(v);
        if admissible(rule, &link, &del) && vd(&link, rule, memo) && vd(&del, rule, memo) {
            result = true;
            break;
        }
    }
    memo.insert(k.facets.clone(), result);
    result
}

fn certificate(k: &SimplicialComplex, rule: VdRule, memo: &mut BTreeMap<Vec<Face>, bool>) -> VdCertificate {
    if k.is_simplex() {
        return VdCertificate::Simplex(k.facets.first().copied());
    }
    for v in k.vertices().vertices() {
        let link = k.link_unchecked(v);
        let del = k.deletion_unchecked(v);
        if admissible(rule, &link, &del) && vd(&link, rule, memo) && vd(&del, rule, memo) {
            return VdCertificate::Shed {
                vertex: v,
                link: Box::new(certificate(&link, rule, memo)),
                deletion: Box::new(certificate(&del, rule, memo)),
            };
        }
    }
    unreachable!("certificate requested for a complex that is not vertex decomposable")
}

/// `Δ(C)`: the codewords and all their subsets.
pub fn simplicial_complex_of(code: &NeuralCode) -> SimplicialComplex {
    SimplicialComplex::from_faces(code.iter().map(Face::from_codeword))
}

/// The polar facet of codeword `c` on neurons `1..=n`.
pub fn polar_facet(c: Codeword, n: usize) -> Face {
    let on = c.intersection(Codeword::full(n)).bits() as u128;
    let off = Codeword::full(n).difference(c).bits() as u128;
    Face(on | off << OFF)
}

/// The codeword of a polar facet.
pub fn polar_codeword(f: Face) -> Codeword {
    Codeword::from_bits(f.0 as u64)
}

/// Signed form of a polar facet, e.g. `"+--"` for `1¬2¬3`.
pub fn signed_string(f: Face, n: usize) -> String {
    (1..=n).map(|i| if f.contains(i) { '+' } else { '-' }).collect()
}

/// Polar facet from its signed form.
pub fn parse_signed(s: &str) -> Option<Face> {
    let mut face = 0u128;
    for (k, ch) in s.chars().enumerate() {
        let i = k + 1;
        match ch {
            '+' => face |= 1 << i,
            '-' => face |= 1 << (OFF + i),
            _ => return None,
        }
    }
    Some(Face(face))
}

/// `Γ(C)`: one facet per codeword over the vertices `{i, ī}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarComplex {
    pub n: usize,
    pub complex: SimplicialComplex,
}

impl PolarComplex {
    pub fn facets(&self) -> &[Face] {
        self.complex.facets()
    }
}

pub fn polar_complex_of(code: &NeuralCode) -> PolarComplex {
    let n = code.n();
    PolarComplex {
        n,
        complex: SimplicialComplex::from_faces(code.iter().map(|c| polar_facet(c, n))),
    }
}

/// Facets of `Γ(C)` in the codeword order.
pub fn shelling_order(code: &NeuralCode) -> Vec<Face> {
    code.iter().map(|c| polar_facet(c, code.n())).collect()
}

/// Where a candidate order stops being a shelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShellingFailure {
    /// Index of the facet whose intersection with its predecessors is bad.
    pub position: usize,
    /// An earlier facet whose intersection is not covered.
    pub earlier: usize,
    pub intersection: Face,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    Shelling,
    Fails(ShellingFailure),
}

impl ShellingVerdict {
    pub fn is_shelling(&self) -> bool {
        matches!(self, ShellingVerdict::Shelling)
    }
}

/// Checks that `order` is a shelling of the pure complex `k`.
///
/// Uses the pairwise characterization: for `i < j`, `F_i ∩ F_j` must lie in
/// some `F_l ∩ F_j` of codimension one with `l < j`.
pub fn verify_shelling(k: &SimplicialComplex, order: &[Face]) -> Result<ShellingVerdict, ComplexError> {
    if !k.is_pure() {
        return Err(ComplexError::Impure);
    }
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != k.facets() {
        return Err(ComplexError::NotAPermutation);
    }
    for (j, &fj) in order.iter().enumerate() {
        let ridge = fj.len().saturating_sub(1);
        let ridges: Vec<Face> = order[..j]
            .iter()
            .map(|fl| fl.intersection(fj))
            .filter(|t| t.len() == ridge)
            .collect();
        for (i, fi) in order[..j].iter().enumerate() {
            let sigma = fi.intersection(fj);
            if sigma.len() >= ridge {
                continue;
            }
            if !ridges.iter().any(|t| sigma.is_subset(*t)) {
                return Ok(ShellingVerdict::Fails(ShellingFailure {
                    position: j,
                    earlier: i,
                    intersection: sigma,
                }));
            }
        }
    }
    Ok(ShellingVerdict::Shelling)
}
