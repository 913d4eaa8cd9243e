//! Points, lines, and star points of the degree-(q+1) Fermat surface
//! X = V(x^{q+1} + y^{q+1} + z^{q+1} + w^{q+1}) in P^3 over GF(q^2).
//!
//! Lines are enumerated in four families with fixed index formulas so that
//! every downstream artifact (graph vertices, orbit representatives) refers
//! to the same line by the same index:
//!
//!   family 0: L_{i(q+1)+j}           = V(x + nu^{2i+1} y, z + nu^{2j+1} w)
//!   family 1: L_{(q+1)^2 + i(q+1)+j} = V(x + nu^{2i+1} z, y + nu^{2j+1} w)
//!   family 2: L_{2(q+1)^2 + i(q+1)+j} = V(x + nu^{2i+1} w, y + nu^{2j+1} z)
//!   family 3: L_{(3+i)(q+1)^2 + j(q+1) + k}
//!             = V(-x + mu^{a_i} y + mu^{a_{i,j}} w,
//!                 -mu^{q a_i} x - y + mu^{a_{i,k}} z)
//!
//! where the a_i are the exponents a with mu^{(q+1)a} != -1 (sorted
//! ascending, 0-indexed) and the a_{i,j} are the sorted (q+1)-st roots of
//! -1 - mu^{(q+1)a_i}.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::{Elem, FieldSpec};
use crate::linalg;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("the two points coincide and do not span a line")]
    PointsCoincide,
    #[error("defining forms are dependent; they do not cut out a line")]
    DegenerateForms,
    #[error("the two lines are equal")]
    SameLine,
    #[error("duplicate line at indices {first} and {second}")]
    DuplicateLine { first: usize, second: usize },
    #[error("line {index} does not lie on the surface")]
    OffSurfaceLine { index: usize },
    #[error("{what}: expected {expected}, got {got}")]
    CountMismatch { what: &'static str, expected: u64, got: u64 },
}

/// Point of P^3, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Elem; 4],
}

impl ProjPoint {
    /// Canonicalizes the coordinate vector; `None` if all entries are zero.
    pub fn new(f: &FieldSpec, coords: [Elem; 4]) -> Option<Self> {
        let lead = coords.iter().find(|c| !c.is_zero())?;
        let inv = f.inv(*lead).expect("leading coordinate is nonzero");
        Some(ProjPoint { coords: coords.map(|c| f.mul(c, inv)) })
    }

    pub fn coords(&self) -> &[Elem; 4] {
        &self.coords
    }
}

/// Line of P^3 as the row space of its canonical (RREF) 2x4 basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    basis: [[Elem; 4]; 2],
}

impl ProjLine {
    pub fn from_points(f: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Result<Self, GeometryError> {
        let mut rows = vec![a.coords.to_vec(), b.coords.to_vec()];
        if linalg::rref(f, &mut rows) != 2 {
            return Err(GeometryError::PointsCoincide);
        }
        let row = |r: &[Elem]| -> [Elem; 4] { [r[0], r[1], r[2], r[3]] };
        Ok(ProjLine { basis: [row(&rows[0]), row(&rows[1])] })
    }

    /// Line cut out by two independent linear forms (coefficient vectors).
    pub fn from_forms(f: &FieldSpec, f1: [Elem; 4], f2: [Elem; 4]) -> Result<Self, GeometryError> {
        let rows = vec![f1.to_vec(), f2.to_vec()];
        let ns = linalg::nullspace(f, &rows, 4);
        if ns.len() != 2 {
            return Err(GeometryError::DegenerateForms);
        }
        let p0 = ProjPoint::new(f, [ns[0][0], ns[0][1], ns[0][2], ns[0][3]]).expect("basis vector");
        let p1 = ProjPoint::new(f, [ns[1][0], ns[1][1], ns[1][2], ns[1][3]]).expect("basis vector");
        Self::from_points(f, &p0, &p1)
    }

    pub fn basis(&self) -> &[[Elem; 4]; 2] {
        &self.basis
    }

    /// All q^2 + 1 points of the line.
    pub fn points(&self, f: &FieldSpec) -> Vec<ProjPoint> {
        let [b0, b1] = self.basis;
        let mut pts = Vec::with_capacity(f.order() as usize + 1);
        pts.push(ProjPoint::new(f, b1).expect("basis vector is nonzero"));
        for t in f.elements() {
            let coords = [
                f.add(b0[0], f.mul(t, b1[0])),
                f.add(b0[1], f.mul(t, b1[1])),
                f.add(b0[2], f.mul(t, b1[2])),
                f.add(b0[3], f.mul(t, b1[3])),
            ];
            pts.push(ProjPoint::new(f, coords).expect("independent combination"));
        }
        pts
    }

    pub fn contains(&self, f: &FieldSpec, p: &ProjPoint) -> bool {
        let mut rows = vec![self.basis[0].to_vec(), self.basis[1].to_vec(), p.coords.to_vec()];
        linalg::rref(f, &mut rows) == 2
    }
}

/// True iff the lines share a projective point, i.e. the stacked 4x4 basis
/// matrix is singular.
pub fn lines_meet(f: &FieldSpec, l1: &ProjLine, l2: &ProjLine) -> Result<bool, GeometryError> {
    if l1 == l2 {
        return Err(GeometryError::SameLine);
    }
    let m = [l1.basis[0], l1.basis[1], l2.basis[0], l2.basis[1]];
    Ok(linalg::det4(f, &m).is_zero())
}

/// The common point of two distinct meeting lines, if any.
pub fn intersection_point(f: &FieldSpec, l1: &ProjLine, l2: &ProjLine) -> Option<ProjPoint> {
    // Solve a*b0 + b*b1 = c*c0 + d*c1 for (a,b,c,d).
    let mut rows = Vec::with_capacity(4);
    for coord in 0..4 {
        rows.push(vec![
            l1.basis[0][coord],
            l1.basis[1][coord],
            f.neg(l2.basis[0][coord]),
            f.neg(l2.basis[1][coord]),
        ]);
    }
    let ns = linalg::nullspace(f, &rows, 4);
    if ns.len() != 1 {
        return None;
    }
    let (a, b) = (ns[0][0], ns[0][1]);
    let coords = [
        f.add(f.mul(a, l1.basis[0][0]), f.mul(b, l1.basis[1][0])),
        f.add(f.mul(a, l1.basis[0][1]), f.mul(b, l1.basis[1][1])),
        f.add(f.mul(a, l1.basis[0][2]), f.mul(b, l1.basis[1][2])),
        f.add(f.mul(a, l1.basis[0][3]), f.mul(b, l1.basis[1][3])),
    ];
    ProjPoint::new(f, coords)
}

/// Value of x^{q+1} + y^{q+1} + z^{q+1} + w^{q+1} at a point.
pub fn surface_value(f: &FieldSpec, p: &ProjPoint) -> Elem {
    p.coords.iter().fold(Elem::ZERO, |acc, &c| f.add(acc, f.norm(c)))
}

pub fn point_on_surface(f: &FieldSpec, p: &ProjPoint) -> bool {
    surface_value(f, p).is_zero()
}

/// True iff the surface form vanishes at every point of the line.
pub fn line_on_surface(f: &FieldSpec, l: &ProjLine) -> bool {
    l.points(f).iter().all(|p| point_on_surface(f, p))
}

/// The enumerated lines of X with their family structure and exponent data.
#[derive(Debug, Clone)]
pub struct LineTable {
    field: FieldSpec,
    lines: Vec<ProjLine>,
    index: HashMap<ProjLine, u16>,
    family_starts: [usize; 4],
    /// Exponents a_i of the fourth family, sorted ascending.
    a_exponents: Vec<u64>,
    /// For each a_i, the sorted exponents a_{i,j} of the (q+1)-st roots of
    /// -1 - mu^{(q+1) a_i}.
    root_exponents: Vec<Vec<u64>>,
}

/// Number of lines on X: q^4 + q^3 + q + 1.
pub fn expected_line_count(q: u64) -> u64 {
    q * q * q * q + q * q * q + q + 1
}

/// Number of star points on X: q^5 + q^3 + q^2 + 1.
pub fn expected_star_count(q: u64) -> u64 {
    q * q * q * q * q + q * q * q + q * q + 1
}

/// Enumerates the lines of X in the fixed four-family order.
pub fn enumerate_lines(field: FieldSpec) -> Result<LineTable, GeometryError> {
    let q = field.q();
    let f = &field;
    let nu = f.nu();
    let mut lines = Vec::new();
    let mut index: HashMap<ProjLine, u16> = HashMap::new();
    let mut family_starts = [0usize; 4];

    let push = |line: ProjLine, lines: &mut Vec<ProjLine>, index: &mut HashMap<ProjLine, u16>| -> Result<(), GeometryError> {
        let idx = lines.len();
        if !line_on_surface(f, &line) {
            return Err(GeometryError::OffSurfaceLine { index: idx });
        }
        if let Some(&first) = index.get(&line) {
            return Err(GeometryError::DuplicateLine { first: first as usize, second: idx });
        }
        index.insert(line, idx as u16);
        lines.push(line);
        Ok(())
    };

    // Families 0..2: coordinate pairings (x,y|z,w), (x,z|y,w), (x,w|y,z).
    let pairings: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    for (fam, pairing) in pairings.iter().enumerate() {
        family_starts[fam] = lines.len();
        for i in 0..=q {
            for j in 0..=q {
                let mut f1 = [Elem::ZERO; 4];
                let mut f2 = [Elem::ZERO; 4];
                f1[pairing[0]] = Elem::ONE;
                f1[pairing[1]] = f.pow_u(nu, 2 * i + 1);
                f2[pairing[2]] = Elem::ONE;
                f2[pairing[3]] = f.pow_u(nu, 2 * j + 1);
                let line = ProjLine::from_forms(f, f1, f2)?;
                push(line, &mut lines, &mut index)?;
            }
        }
    }

    // Family 3. The a_i are the exponents whose (q+1)-st power is not -1;
    // for those, -1 - mu^{(q+1)a} is a nonzero norm and the roots exist.
    family_starts[3] = lines.len();
    let n = field.order() - 1;
    let minus_one = f.neg(Elem::ONE);
    let a_exponents: Vec<u64> = (0..n)
        .filter(|&a| f.pow_u(f.mu_pow(a as i64), q + 1) != minus_one)
        .collect();
    let mut root_exponents = Vec::with_capacity(a_exponents.len());
    for &a in &a_exponents {
        let target = f.sub(minus_one, f.pow_u(f.mu_pow(a as i64), q + 1));
        let roots: Vec<u64> = (0..n)
            .filter(|&b| f.pow_u(f.mu_pow(b as i64), q + 1) == target)
            .collect();
        if roots.len() as u64 != q + 1 {
            return Err(GeometryError::CountMismatch {
                what: "(q+1)-st roots for fourth-family exponent",
                expected: q + 1,
                got: roots.len() as u64,
            });
        }
        root_exponents.push(roots);
    }
    for (i, &a) in a_exponents.iter().enumerate() {
        let mu_a = f.mu_pow(a as i64);
        let mu_qa = f.pow_u(mu_a, q);
        for j in 0..=q as usize {
            for k in 0..=q as usize {
                let f1 = [
                    f.neg(Elem::ONE),
                    mu_a,
                    Elem::ZERO,
                    f.mu_pow(root_exponents[i][j] as i64),
                ];
                let f2 = [
                    f.neg(mu_qa),
                    f.neg(Elem::ONE),
                    f.mu_pow(root_exponents[i][k] as i64),
                    Elem::ZERO,
                ];
                let line = ProjLine::from_forms(f, f1, f2)?;
                push(line, &mut lines, &mut index)?;
            }
        }
    }

    let expected = expected_line_count(q);
    if lines.len() as u64 != expected {
        return Err(GeometryError::CountMismatch {
            what: "total line count",
            expected,
            got: lines.len() as u64,
        });
    }

    Ok(LineTable { field, lines, index, family_starts, a_exponents, root_exponents })
}

impl LineTable {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line(&self, idx: usize) -> &ProjLine {
        &self.lines[idx]
    }

    /// Index of a canonical line, if it is on the surface.
    pub fn index_of(&self, line: &ProjLine) -> Option<u16> {
        self.index.get(line).copied()
    }

    /// Family (0..3) of a line index.
    pub fn family_of(&self, idx: usize) -> usize {
        match self.family_starts.iter().rposition(|&s| s <= idx) {
            Some(fam) => fam,
            None => 0,
        }
    }

    pub fn family_starts(&self) -> &[usize; 4] {
        &self.family_starts
    }

    pub fn a_exponents(&self) -> &[u64] {
        &self.a_exponents
    }

    pub fn root_exponents(&self) -> &[Vec<u64>] {
        &self.root_exponents
    }
}

/// Star points (pairwise line intersections) with incidence lists.
#[derive(Debug, Clone)]
pub struct StarPointTable {
    points: Vec<ProjPoint>,
    point_index: HashMap<ProjPoint, u32>,
    /// Sorted line indices through each point.
    lines_through: Vec<Vec<u16>>,
    /// Sorted point ids on each line.
    stars_on_line: Vec<Vec<u32>>,
}

impl StarPointTable {
    /// Collects all pairwise intersection points of the given lines. No
    /// count validation; use `star_points` for the checked construction.
    pub fn from_lines(f: &FieldSpec, lines: &[ProjLine]) -> StarPointTable {
        let mut by_point: std::collections::BTreeMap<ProjPoint, Vec<u16>> = Default::default();
        for u in 0..lines.len() {
            for v in u + 1..lines.len() {
                if let Some(p) = intersection_point(f, &lines[u], &lines[v]) {
                    let entry = by_point.entry(p).or_default();
                    for idx in [u as u16, v as u16] {
                        if let Err(pos) = entry.binary_search(&idx) {
                            entry.insert(pos, idx);
                        }
                    }
                }
            }
        }
        let mut points = Vec::with_capacity(by_point.len());
        let mut point_index = HashMap::with_capacity(by_point.len());
        let mut lines_through = Vec::with_capacity(by_point.len());
        let mut stars_on_line = vec![Vec::new(); lines.len()];
        for (p, incident) in by_point {
            let id = points.len() as u32;
            point_index.insert(p, id);
            for &l in &incident {
                stars_on_line[l as usize].push(id);
            }
            points.push(p);
            lines_through.push(incident);
        }
        StarPointTable { points, point_index, lines_through, stars_on_line }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point_id(&self, p: &ProjPoint) -> Option<u32> {
        self.point_index.get(p).copied()
    }

    pub fn lines_through(&self, point_id: u32) -> &[u16] {
        &self.lines_through[point_id as usize]
    }

    pub fn stars_on_line(&self, line_idx: usize) -> &[u32] {
        &self.stars_on_line[line_idx]
    }
}

/// Builds the star-point table and validates the structural counts.
pub fn star_points(table: &LineTable) -> Result<StarPointTable, GeometryError> {
    let q = table.q();
    let stars = StarPointTable::from_lines(table.field(), table.lines());
    let expected = expected_star_count(q);
    if stars.len() as u64 != expected {
        return Err(GeometryError::CountMismatch {
            what: "star point count",
            expected,
            got: stars.len() as u64,
        });
    }
    for incident in &stars.lines_through {
        if incident.len() as u64 != q + 1 {
            return Err(GeometryError::CountMismatch {
                what: "lines through a star point",
                expected: q + 1,
                got: incident.len() as u64,
            });
        }
    }
    for on_line in &stars.stars_on_line {
        if on_line.len() as u64 != q * q + 1 {
            return Err(GeometryError::CountMismatch {
                what: "star points on a line",
                expected: q * q + 1,
                got: on_line.len() as u64,
            });
        }
    }
    Ok(stars)
}

/// Result of checking the generalized-quadrangle axioms (with parameters
/// s = q^2, t = q) plus triangle-freeness on a line set.
#[derive(Debug, Clone)]
pub struct GqCheck {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GqReport {
    pub checks: Vec<GqCheck>,
}

impl GqReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks the GQ(q^2, q) axioms on the incidence structure spanned by
/// `lines` and their pairwise intersections recorded in `stars`.
pub fn verify_gq(f: &FieldSpec, lines: &[ProjLine], stars: &StarPointTable) -> GqReport {
    let q = f.q();
    let s = q * q;
    let t = q;
    let mut checks = Vec::new();
    let mut add = |name: &'static str, witness: Option<String>| {
        checks.push(GqCheck { name, pass: witness.is_none(), witness });
    };

    // Axiom 1: s+1 points per line; at most one common point per line pair.
    let mut witness = None;
    for l in 0..lines.len() {
        let c = stars.stars_on_line(l).len() as u64;
        if c != s + 1 {
            witness = Some(format!("line {l} carries {c} points, expected {}", s + 1));
            break;
        }
    }
    add("points_per_line", witness);

    let mut witness = None;
    'outer1: for u in 0..lines.len() {
        for v in u + 1..lines.len() {
            let common = stars
                .stars_on_line(u)
                .iter()
                .filter(|id| stars.stars_on_line(v).binary_search(id).is_ok())
                .count();
            if common > 1 {
                witness = Some(format!("lines {u} and {v} share {common} points"));
                break 'outer1;
            }
        }
    }
    add("line_pairs_share_at_most_one_point", witness);

    // Axiom 2: t+1 lines per point; at most one line through two points.
    let mut witness = None;
    for id in 0..stars.len() as u32 {
        let c = stars.lines_through(id).len() as u64;
        if c != t + 1 {
            witness = Some(format!("point {id} lies on {c} lines, expected {}", t + 1));
            break;
        }
    }
    add("lines_per_point", witness);

    let mut witness = None;
    let mut pair_seen: HashMap<(u32, u32), u16> = HashMap::new();
    'outer2: for l in 0..lines.len() {
        let pts = stars.stars_on_line(l);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if let Some(&other) = pair_seen.get(&(pts[i], pts[j])) {
                    witness = Some(format!(
                        "points {} and {} lie on lines {other} and {l}",
                        pts[i], pts[j]
                    ));
                    break 'outer2;
                }
                pair_seen.insert((pts[i], pts[j]), l as u16);
            }
        }
    }
    add("point_pairs_span_at_most_one_line", witness);

    // Axiom 3: unique projection of an external point onto a line.
    let mut witness = None;
    'outer3: for id in 0..stars.len() as u32 {
        let through = stars.lines_through(id);
        for l in 0..lines.len() {
            if through.binary_search(&(l as u16)).is_ok() {
                continue;
            }
            let on_l = stars.stars_on_line(l);
            let mut count = 0u64;
            for &m in through {
                // m meets l iff they share a recorded point.
                let meets = stars
                    .stars_on_line(m as usize)
                    .iter()
                    .any(|p| on_l.binary_search(p).is_ok());
                if meets {
                    count += 1;
                }
            }
            if count != 1 {
                witness = Some(format!(
                    "point {id} and line {l}: {count} projections, expected 1"
                ));
                break 'outer3;
            }
        }
    }
    add("unique_projection", witness);

    // Triangle-freeness: three pairwise-meeting lines are concurrent.
    let mut witness = None;
    'outer4: for u in 0..lines.len() {
        for v in u + 1..lines.len() {
            let common: Vec<u32> = stars
                .stars_on_line(u)
                .iter()
                .filter(|id| stars.stars_on_line(v).binary_search(id).is_ok())
                .copied()
                .collect();
            let Some(&p) = common.first() else { continue };
            for w in v + 1..lines.len() {
                let meets_u = stars
                    .stars_on_line(w)
                    .iter()
                    .any(|id| stars.stars_on_line(u).binary_search(id).is_ok());
                let meets_v = stars
                    .stars_on_line(w)
                    .iter()
                    .any(|id| stars.stars_on_line(v).binary_search(id).is_ok());
                if meets_u && meets_v && stars.stars_on_line(w).binary_search(&p).is_err() {
                    witness = Some(format!("lines {u}, {v}, {w} form a triangle"));
                    break 'outer4;
                }
            }
        }
    }
    add("triangle_free", witness);

    GqReport { checks }
}
