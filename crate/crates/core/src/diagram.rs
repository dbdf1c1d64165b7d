//! Open Jacobi diagrams as combinatorial maps.
//!
//! A diagram is a set of darts `0..D`, an edge involution (perfect matching on
//! darts), and a vertex partition into cyclically ordered triples (trivalent,
//! counterclockwise) and single darts (univalent legs). Thickening the graph
//! according to a [`BState`] gives an orientable surface whose boundary
//! components are the cycles of `rotation ∘ edge`.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use smallvec::SmallVec;

use crate::casimir::{CasimirMonomial, Indices};
use crate::error::{Error, Result};

pub type Dart = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub darts: usize,
    #[serde(serialize_with = "serialize_edges")]
    pub edges: Vec<[Dart; 2]>,
    #[serde(serialize_with = "serialize_rotations")]
    pub trivalent: Vec<[Dart; 3]>,
    pub univalent: Vec<Dart>,
}

/// Rotates a cyclic triple so that it starts at its smallest dart.
pub fn canonical_rotation(t: [Dart; 3]) -> [Dart; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

fn serialize_rotations<S: Serializer>(v: &[[Dart; 3]], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&t| canonical_rotation(t)))
}

fn serialize_edges<S: Serializer>(v: &[[Dart; 2]], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&[a, b]| [a.min(b), a.max(b)]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DartOutOfRange { dart: Dart, darts: usize },
    MatchingNotPerfect { dart: Dart, occurrences: usize },
    VertexCover { dart: Dart, occurrences: usize },
    EdgeCount { darts: usize, edges: usize },
    VertexDartCount { darts: usize, trivalent: usize, univalent: usize },
    OddVertexCount { vertices: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DartOutOfRange { dart, darts } => {
                write!(f, "dart {dart} out of range 0..{darts}")
            }
            Violation::MatchingNotPerfect { dart, occurrences } => {
                write!(f, "matching not perfect: dart {dart} lies on {occurrences} edges")
            }
            Violation::VertexCover { dart, occurrences } => {
                write!(f, "dart {dart} lies on {occurrences} vertex records")
            }
            Violation::EdgeCount { darts, edges } => {
                write!(f, "D = 2·|edges| fails: D = {darts}, |edges| = {edges}")
            }
            Violation::VertexDartCount { darts, trivalent, univalent } => write!(
                f,
                "D = 3·|trivalent| + |univalent| fails: D = {darts}, |trivalent| = {trivalent}, |univalent| = {univalent}"
            ),
            Violation::OddVertexCount { vertices } => {
                write!(f, "vertex count {vertices} is odd, degree is not an integer")
            }
        }
    }
}

impl Diagram {
    pub fn strut() -> Diagram {
        Diagram {
            darts: 2,
            edges: vec![[0, 1]],
            trivalent: vec![],
            univalent: vec![0, 1],
        }
    }

    /// Every violated structural invariant, empty when the diagram is well formed.
    pub fn violations(&self) -> Vec<Violation> {
        let d = self.darts;
        let mut out = Vec::new();
        let mut on_edges = vec![0usize; d];
        let mut on_vertices = vec![0usize; d];
        let mark = |dart: Dart, counts: &mut Vec<usize>, out: &mut Vec<Violation>| {
            if (dart as usize) < d {
                counts[dart as usize] += 1;
            } else {
                out.push(Violation::DartOutOfRange { dart, darts: d });
            }
        };
        for e in &self.edges {
            for &x in e {
                mark(x, &mut on_edges, &mut out);
            }
        }
        for t in &self.trivalent {
            for &x in t {
                mark(x, &mut on_vertices, &mut out);
            }
        }
        for &x in &self.univalent {
            mark(x, &mut on_vertices, &mut out);
        }
        out.dedup();
        for (dart, &n) in on_edges.iter().enumerate() {
            if n != 1 {
                out.push(Violation::MatchingNotPerfect { dart: dart as Dart, occurrences: n });
            }
        }
        for (dart, &n) in on_vertices.iter().enumerate() {
            if n != 1 {
                out.push(Violation::VertexCover { dart: dart as Dart, occurrences: n });
            }
        }
        if d != 2 * self.edges.len() {
            out.push(Violation::EdgeCount { darts: d, edges: self.edges.len() });
        }
        if d != 3 * self.trivalent.len() + self.univalent.len() {
            out.push(Violation::VertexDartCount {
                darts: d,
                trivalent: self.trivalent.len(),
                univalent: self.univalent.len(),
            });
        }
        let vertices = self.trivalent.len() + self.univalent.len();
        if vertices % 2 != 0 {
            out.push(Violation::OddVertexCount { vertices });
        }
        out
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn leg_count(&self) -> usize {
        self.univalent.len()
    }

    pub fn trivalent_count(&self) -> usize {
        self.trivalent.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.trivalent.len() + self.univalent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        self.vertex_count() / 2
    }

    /// Connectivity of the dart adjacency graph. Assumes darts are in range.
    pub fn is_connected(&self) -> bool {
        if self.darts == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.darts);
        for &[a, b] in &self.edges {
            uf.union(a as usize, b as usize);
        }
        for &[a, b, c] in &self.trivalent {
            uf.union(a as usize, b as usize);
            uf.union(a as usize, c as usize);
        }
        let root = uf.find(0);
        (1..self.darts).all(|x| uf.find(x) == root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("diagram serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Diagram> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Incremental construction of a diagram; darts are numbered in allocation order.
#[derive(Default, Debug)]
pub struct DiagramBuilder {
    darts: u32,
    edges: Vec<[Dart; 2]>,
    trivalent: Vec<[Dart; 3]>,
    univalent: Vec<Dart>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dart(&mut self) -> Dart {
        self.darts += 1;
        self.darts - 1
    }

    /// A trivalent vertex with three fresh darts, counterclockwise.
    pub fn trivalent(&mut self) -> [Dart; 3] {
        let t = [self.dart(), self.dart(), self.dart()];
        self.trivalent.push(t);
        t
    }

    pub fn trivalent_from(&mut self, t: [Dart; 3]) {
        self.trivalent.push(t);
    }

    pub fn edge(&mut self, a: Dart, b: Dart) {
        self.edges.push([a, b]);
    }

    /// Attaches a univalent vertex to `dart`.
    pub fn leg(&mut self, dart: Dart) {
        let u = self.dart();
        self.univalent.push(u);
        self.edge(dart, u);
    }

    pub fn build(self) -> Diagram {
        Diagram {
            darts: self.darts as usize,
            edges: self.edges,
            trivalent: self.trivalent,
            univalent: self.univalent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A sign per trivalent vertex, indexed like `Diagram::trivalent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BState {
    pub signs: Vec<Sign>,
}

impl BState {
    pub fn all_plus(n: usize) -> BState {
        BState { signs: vec![Sign::Plus; n] }
    }

    /// Bit `i` of `mask` set means vertex `i` is `-1`.
    pub fn from_mask(n: usize, mask: u64) -> BState {
        BState {
            signs: (0..n)
                .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Minus)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Number of `-1` entries.
    pub fn weight(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Minus).count()
    }

    pub fn conjugate(&self) -> BState {
        BState { signs: self.signs.iter().map(|s| s.flip()).collect() }
    }

    /// Splits into the signs on proper and on non-proper vertices.
    pub fn split(&self, proper: &[bool]) -> (Vec<Sign>, Vec<Sign>) {
        let mut p = Vec::new();
        let mut np = Vec::new();
        for (&s, &is_proper) in self.signs.iter().zip(proper) {
            if is_proper {
                p.push(s)
            } else {
                np.push(s)
            }
        }
        (p, np)
    }
}

pub fn conjugate(s: &BState) -> BState {
    s.conjugate()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub missing_points: u32,
}

/// Boundary components of the thickened diagram under one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTrace {
    pub faces: Vec<Face>,
    pub genus: u32,
    pub vertices: usize,
    pub edges: usize,
}

impl SurfaceTrace {
    pub fn missing_points(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.faces.iter().map(|f| f.missing_points).collect();
        v.sort_unstable();
        v
    }

    pub fn omega(&self) -> CasimirMonomial {
        omega(self)
    }
}

/// The monomial `c_{r_1} ... c_{r_j}` of the per-face missing-point counts.
pub fn omega(t: &SurfaceTrace) -> CasimirMonomial {
    CasimirMonomial::new(t.faces.iter().map(|f| f.missing_points))
}

/// A validated diagram with the permutations needed for face tracing.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    diagram: Diagram,
    partner: Vec<Dart>,
    is_leg: Vec<bool>,
    proper: Vec<bool>,
    connected: bool,
}

/// Reusable buffers for repeated face tracing.
#[derive(Clone, Debug, Default)]
pub struct TraceScratch {
    sigma: Vec<Dart>,
    visited: Vec<bool>,
}

impl RibbonGraph {
    pub fn new(diagram: &Diagram) -> Result<RibbonGraph> {
        diagram.validate().map_err(Error::InvalidDiagram)?;
        let mut partner = vec![0; diagram.darts];
        for &[a, b] in &diagram.edges {
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        let mut is_leg = vec![false; diagram.darts];
        for &u in &diagram.univalent {
            is_leg[u as usize] = true;
        }
        let proper = diagram
            .trivalent
            .iter()
            .map(|t| t.iter().all(|&x| !is_leg[partner[x as usize] as usize]))
            .collect();
        Ok(RibbonGraph {
            connected: diagram.is_connected(),
            diagram: diagram.clone(),
            partner,
            is_leg,
            proper,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn trivalent_count(&self) -> usize {
        self.diagram.trivalent.len()
    }

    pub fn leg_count(&self) -> usize {
        self.diagram.univalent.len()
    }

    pub fn degree(&self) -> usize {
        self.diagram.degree()
    }

    /// Per trivalent vertex: true when no neighbour is univalent.
    pub fn proper_vertices(&self) -> &[bool] {
        &self.proper
    }

    pub fn proper_count(&self) -> usize {
        self.proper.iter().filter(|&&p| p).count()
    }

    pub fn scratch(&self) -> TraceScratch {
        let mut sigma = vec![0; self.diagram.darts];
        for &u in &self.diagram.univalent {
            sigma[u as usize] = u;
        }
        TraceScratch {
            sigma,
            visited: vec![false; self.diagram.darts],
        }
    }

    fn load_rotation(&self, scratch: &mut TraceScratch, vertex: usize, sign: Sign) {
        let [a, b, c] = self.diagram.trivalent[vertex];
        let s = &mut scratch.sigma;
        match sign {
            Sign::Plus => {
                s[a as usize] = b;
                s[b as usize] = c;
                s[c as usize] = a;
            }
            Sign::Minus => {
                s[a as usize] = c;
                s[c as usize] = b;
                s[b as usize] = a;
            }
        }
    }

    /// Walks the cycles of `sigma ∘ partner`, starting each at its smallest
    /// unvisited dart. Pushes one missing-point count per face into `counts`
    /// and, if given, the dart cycle into `cycles`.
    fn walk_faces(&self, scratch: &mut TraceScratch, counts: &mut Indices, mut cycles: Option<&mut Vec<Vec<Dart>>>) {
        let TraceScratch { sigma, visited } = scratch;
        visited.iter_mut().for_each(|v| *v = false);
        for start in 0..self.diagram.darts {
            if visited[start] {
                continue;
            }
            let mut legs = 0u32;
            let mut cycle = cycles.as_ref().map(|_| Vec::new());
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                legs += self.is_leg[x] as u32;
                if let Some(c) = cycle.as_mut() {
                    c.push(x as Dart);
                }
                x = sigma[self.partner[x] as usize] as usize;
            }
            counts.push(legs);
            if let (Some(all), Some(c)) = (cycles.as_deref_mut(), cycle) {
                all.push(c);
            }
        }
    }

    /// Sorted per-face missing-point counts for the state encoded by `mask`
    /// (bit `i` set means vertex `i` is `-1`). Hot path of the state sum.
    pub fn face_profile(&self, mask: u64, scratch: &mut TraceScratch, counts: &mut Indices) {
        for v in 0..self.diagram.trivalent.len() {
            let sign = if mask >> v & 1 == 1 { Sign::Minus } else { Sign::Plus };
            self.load_rotation(scratch, v, sign);
        }
        counts.clear();
        self.walk_faces(scratch, counts, None);
        counts.sort_unstable();
    }

    /// Genus of a connected surface with the given number of boundary components.
    pub fn genus_for_faces(&self, faces: usize) -> u32 {
        let chi = self.diagram.vertex_count() as i64 - self.diagram.edges.len() as i64 + faces as i64;
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0, "euler characteristic {chi}");
        ((2 - chi) / 2) as u32
    }

    pub fn check_state(&self, s: &BState) -> Result<()> {
        if s.len() != self.trivalent_count() {
            return Err(Error::StateDomain { expected: self.trivalent_count(), got: s.len() });
        }
        Ok(())
    }

    pub fn trace(&self, s: &BState) -> Result<SurfaceTrace> {
        self.check_state(s)?;
        if !self.connected {
            return Err(Error::Disconnected);
        }
        let mut scratch = self.scratch();
        for (v, &sign) in s.signs.iter().enumerate() {
            self.load_rotation(&mut scratch, v, sign);
        }
        let mut counts = SmallVec::new();
        let mut cycles = Vec::new();
        self.walk_faces(&mut scratch, &mut counts, Some(&mut cycles));
        let faces: Vec<Face> = cycles
            .into_iter()
            .zip(counts)
            .map(|(darts, missing_points)| Face { darts, missing_points })
            .collect();
        Ok(SurfaceTrace {
            genus: self.genus_for_faces(faces.len()),
            vertices: self.diagram.vertex_count(),
            edges: self.diagram.edges.len(),
            faces,
        })
    }
}

/// Traces `F(d, s)`; `d` must be valid and connected.
pub fn trace_surface(d: &Diagram, s: &BState) -> Result<SurfaceTrace> {
    RibbonGraph::new(d)?.trace(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Circle of two trivalent vertices with outward legs.
    fn wheel2() -> Diagram {
        // vertex 0: [fwd 0, back 1, leg 2]; vertex 1: [fwd 3, back 4, leg 5]
        Diagram {
            darts: 8,
            edges: vec![[0, 4], [3, 1], [2, 6], [5, 7]],
            trivalent: vec![[0, 1, 2], [3, 4, 5]],
            univalent: vec![6, 7],
        }
    }

    #[test]
    fn strut_is_valid() {
        assert_eq!(Diagram::strut().validate(), Ok(()));
        assert_eq!(Diagram::strut().degree(), 1);
    }

    #[test]
    fn dart_on_two_edges() {
        let d = Diagram {
            darts: 2,
            edges: vec![[0, 1], [0, 1]],
            trivalent: vec![],
            univalent: vec![0, 1],
        };
        let v = d.violations();
        assert!(v.iter().any(|x| x.to_string().starts_with("matching not perfect")));
    }

    #[test]
    fn odd_dart_count() {
        let d = Diagram {
            darts: 9,
            edges: vec![[0, 3], [1, 6], [2, 7], [4, 8]],
            trivalent: vec![[0, 1, 2], [3, 4, 5]],
            univalent: vec![6, 7, 8],
        };
        let v = d.violations();
        assert!(v.iter().any(|x| x.to_string().starts_with("D = 2·|edges| fails")), "{v:?}");
        assert!(v.iter().any(|x| matches!(x, Violation::MatchingNotPerfect { dart: 5, .. })));
    }

    #[test]
    fn out_of_range_and_uncovered() {
        let d = Diagram {
            darts: 2,
            edges: vec![[0, 5]],
            trivalent: vec![],
            univalent: vec![0],
        };
        let v = d.violations();
        assert!(v.contains(&Violation::DartOutOfRange { dart: 5, darts: 2 }));
        assert!(v.contains(&Violation::VertexCover { dart: 1, occurrences: 0 }));
        assert!(RibbonGraph::new(&d).is_err());
    }

    #[test]
    fn conjugate_states() {
        let s = BState::all_plus(4);
        let c = s.conjugate();
        assert!(c.signs.iter().all(|&x| x == Sign::Minus));
        assert_eq!(c.weight(), 4);
        assert!(BState::all_plus(0).conjugate().is_empty());
        let s = BState { signs: vec![Sign::Plus, Sign::Minus, Sign::Plus] };
        assert_eq!(s.weight(), 1);
        assert_eq!(conjugate(&s).signs, vec![Sign::Minus, Sign::Plus, Sign::Minus]);
        assert_eq!(conjugate(&s).weight(), 2);
    }

    #[test]
    fn mask_roundtrip() {
        let s = BState::from_mask(5, 0b10110);
        assert_eq!(s.weight(), 3);
        assert_eq!(s.to_mask(), 0b10110);
    }

    #[test]
    fn strut_trace() {
        let t = trace_surface(&Diagram::strut(), &BState::all_plus(0)).unwrap();
        assert_eq!(t.faces.len(), 1);
        assert_eq!(t.missing_points(), vec![2]);
        assert_eq!(t.genus, 0);
        assert_eq!(omega(&t), CasimirMonomial::new([2]));
    }

    #[test]
    fn wheel2_traces() {
        let d = wheel2();
        let t = trace_surface(&d, &BState::all_plus(2)).unwrap();
        assert_eq!(t.missing_points(), vec![0, 2]);
        assert_eq!(t.genus, 0);
        assert_eq!(omega(&t), CasimirMonomial::new([0, 2]));
        let t = trace_surface(&d, &BState::from_mask(2, 0b10)).unwrap();
        assert_eq!(t.missing_points(), vec![1, 1]);
        assert_eq!(t.genus, 0);
        assert_eq!(omega(&t), CasimirMonomial::new([1, 1]));
    }

    #[test]
    fn faces_cover_darts_once() {
        let d = wheel2();
        for mask in 0..4 {
            let t = trace_surface(&d, &BState::from_mask(2, mask)).unwrap();
            let mut all: Vec<Dart> = t.faces.iter().flat_map(|f| f.darts.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..8).collect::<Vec<_>>());
        }
    }

    #[test]
    fn bad_state_domain() {
        assert_eq!(
            trace_surface(&wheel2(), &BState::all_plus(3)),
            Err(Error::StateDomain { expected: 2, got: 3 })
        );
    }

    #[test]
    fn disconnected_refused() {
        let d = Diagram {
            darts: 4,
            edges: vec![[0, 1], [2, 3]],
            trivalent: vec![],
            univalent: vec![0, 1, 2, 3],
        };
        assert_eq!(d.validate(), Ok(()));
        assert!(!d.is_connected());
        assert_eq!(trace_surface(&d, &BState::all_plus(0)), Err(Error::Disconnected));
    }

    #[test]
    fn proper_flags() {
        let g = RibbonGraph::new(&wheel2()).unwrap();
        assert_eq!(g.proper_vertices(), &[false, false]);
    }

    #[test]
    fn serializer_canonicalizes_rotations() {
        let mut d = wheel2();
        d.trivalent[1] = [4, 5, 3];
        let json = d.to_json();
        let back = Diagram::from_json(&json).unwrap();
        assert_eq!(back.trivalent[1], [3, 4, 5]);
        // reversal is a different rotation and must survive
        d.trivalent[1] = [5, 4, 3];
        let back = Diagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back.trivalent[1], [3, 5, 4]);
    }
}
