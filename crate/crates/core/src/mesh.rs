//! Triangulations of the unit cell (0,1)² with a centered disc inclusion.
//!
//! Meshes come from the structured generator, from uniform refinement, or from
//! external node/element files. Opposite boundary edges must carry mirror-image
//! vertex sets so that periodic degrees of freedom can be identified.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Absolute tolerance for pairing opposite-boundary vertices and for boundary
/// classification. Structured coordinates are exact, imports near-exact.
pub const PAIR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaterialTag {
    Background,
    Inclusion,
}

/// Conforming triangulation of [0,1]² with per-triangle material tags.
///
/// All triangles are counterclockwise; `h` is the longest edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCellMesh {
    pub vertices: Vec<[f64; 2]>,
    /// Vertex index triples, counterclockwise.
    pub triangles: Vec<[usize; 3]>,
    pub material: Vec<MaterialTag>,
    pub h: f64,
    pub disc_radius: f64,
}

/// Identification of mesh vertices with independent periodic DOFs.
#[derive(Debug, Clone)]
pub struct PeriodicDofMap {
    /// Vertex index → periodic DOF index.
    pub dof_of_vertex: Vec<usize>,
    pub n_dofs: usize,
}

fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

fn centroid(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0]
}

fn centroid_tag(centroid: [f64; 2], r: f64) -> MaterialTag {
    let dx = centroid[0] - 0.5;
    let dy = centroid[1] - 0.5;
    if dx * dx + dy * dy < r * r {
        MaterialTag::Inclusion
    } else {
        MaterialTag::Background
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::InvalidGeometry(format!(
            "disc radius must satisfy 0 < r < 1/2, got {r}"
        )));
    }
    Ok(())
}

impl UnitCellMesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        signed_area(self.vertices[a], self.vertices[b], self.vertices[c])
    }

    fn longest_edge(&self) -> f64 {
        let mut h: f64 = 0.0;
        for tri in &self.triangles {
            for e in 0..3 {
                let p = self.vertices[tri[e]];
                let q = self.vertices[tri[(e + 1) % 3]];
                h = h.max(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
            }
        }
        h
    }

    fn retag(&mut self) {
        self.material = self
            .triangles
            .iter()
            .map(|&[a, b, c]| {
                centroid_tag(
                    centroid(self.vertices[a], self.vertices[b], self.vertices[c]),
                    self.disc_radius,
                )
            })
            .collect();
    }
}

/// Uniform n×n grid of squares, each split into two triangles along the
/// lower-left to upper-right diagonal. The material tag is decided by whether
/// the triangle centroid falls inside the disc of radius `r` at (1/2, 1/2).
pub fn generate_structured(n: usize, r: f64) -> Result<UnitCellMesh> {
    if n < 2 {
        return Err(Error::InvalidGeometry(format!(
            "structured mesh needs n >= 2 subdivisions, got {n}"
        )));
    }
    check_radius(r)?;

    let nv = n + 1;
    let mut vertices = Vec::with_capacity(nv * nv);
    for j in 0..nv {
        for i in 0..nv {
            vertices.push([i as f64 / n as f64, j as f64 / n as f64]);
        }
    }
    let v = |i: usize, j: usize| j * nv + i;

    let mut triangles = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (ll, lr, ur, ul) = (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1));
            triangles.push([ll, lr, ur]);
            triangles.push([ll, ur, ul]);
        }
    }

    let mut mesh = UnitCellMesh {
        vertices,
        triangles,
        material: Vec::new(),
        h: 0.0,
        disc_radius: r,
    };
    mesh.h = mesh.longest_edge();
    mesh.retag();
    Ok(mesh)
}

/// Splits every triangle into four via edge midpoints; `h` halves and material
/// tags are recomputed with the centroid rule.
pub fn refine_uniform(mesh: &UnitCellMesh) -> UnitCellMesh {
    let mut vertices = mesh.vertices.clone();
    let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mid = |a: usize, b: usize, vertices: &mut Vec<[f64; 2]>| -> usize {
        let key = (a.min(b), a.max(b));
        *midpoint.entry(key).or_insert_with(|| {
            let p = vertices[a];
            let q = vertices[b];
            vertices.push([(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0]);
            vertices.len() - 1
        })
    };

    let mut triangles = Vec::with_capacity(4 * mesh.triangles.len());
    for &[a, b, c] in &mesh.triangles {
        let ab = mid(a, b, &mut vertices);
        let bc = mid(b, c, &mut vertices);
        let ca = mid(c, a, &mut vertices);
        triangles.push([a, ab, ca]);
        triangles.push([ab, b, bc]);
        triangles.push([ca, bc, c]);
        triangles.push([ab, bc, ca]);
    }

    let mut refined = UnitCellMesh {
        vertices,
        triangles,
        material: Vec::new(),
        h: 0.0,
        disc_radius: mesh.disc_radius,
    };
    refined.h = refined.longest_edge();
    refined.retag();
    refined
}

/// Index pairs (vertex on the low side, vertex on the high side) matched by the
/// off-axis coordinate within [`PAIR_TOL`].
fn pair_boundary(
    vertices: &[[f64; 2]],
    axis: usize,
) -> Result<Vec<(usize, usize)>> {
    let other = 1 - axis;
    let mut low: Vec<usize> = Vec::new();
    let mut high: Vec<usize> = Vec::new();
    for (idx, p) in vertices.iter().enumerate() {
        if p[axis].abs() <= PAIR_TOL {
            low.push(idx);
        } else if (p[axis] - 1.0).abs() <= PAIR_TOL {
            high.push(idx);
        }
    }
    if low.len() != high.len() {
        return Err(Error::NonMatchingBoundary(format!(
            "axis {axis}: {} vertices on the low side, {} on the high side",
            low.len(),
            high.len()
        )));
    }
    let sort_key = |&i: &usize| vertices[i][other];
    low.sort_by(|a, b| sort_key(a).total_cmp(&sort_key(b)));
    high.sort_by(|a, b| sort_key(a).total_cmp(&sort_key(b)));
    let mut pairs = Vec::with_capacity(low.len());
    for (&l, &h) in low.iter().zip(&high) {
        if (vertices[l][other] - vertices[h][other]).abs() > PAIR_TOL {
            return Err(Error::NonMatchingBoundary(format!(
                "axis {axis}: no partner for boundary vertex at ({}, {})",
                vertices[l][0], vertices[l][1]
            )));
        }
        pairs.push((l, h));
    }
    Ok(pairs)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as representative for determinism
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
    }
}

/// Identifies opposite-edge vertices (and the four corners jointly) into
/// single periodic DOFs.
pub fn build_periodic_dof_map(mesh: &UnitCellMesh) -> Result<PeriodicDofMap> {
    let nv = mesh.n_vertices();
    let mut uf = UnionFind::new(nv);
    for axis in 0..2 {
        for (l, h) in pair_boundary(&mesh.vertices, axis)? {
            uf.union(l, h);
        }
    }
    let mut dof_of_root: HashMap<usize, usize> = HashMap::new();
    let mut dof_of_vertex = vec![0usize; nv];
    let mut n_dofs = 0usize;
    for v in 0..nv {
        let root = uf.find(v);
        let dof = *dof_of_root.entry(root).or_insert_with(|| {
            let d = n_dofs;
            n_dofs += 1;
            d
        });
        dof_of_vertex[v] = dof;
    }
    Ok(PeriodicDofMap {
        dof_of_vertex,
        n_dofs,
    })
}

fn validate(mesh: &UnitCellMesh) -> Result<()> {
    for (i, p) in mesh.vertices.iter().enumerate() {
        if !(-PAIR_TOL..=1.0 + PAIR_TOL).contains(&p[0])
            || !(-PAIR_TOL..=1.0 + PAIR_TOL).contains(&p[1])
        {
            return Err(Error::InvalidGeometry(format!(
                "vertex {i} at ({}, {}) lies outside the unit cell",
                p[0], p[1]
            )));
        }
    }
    let mut total = 0.0;
    for (t, &[a, b, c]) in mesh.triangles.iter().enumerate() {
        if a.max(b).max(c) >= mesh.vertices.len() {
            return Err(Error::ParseError(format!(
                "triangle {t} references a vertex index out of range"
            )));
        }
        let area = signed_area(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]);
        if area <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "triangle {t} has non-positive signed area {area} (clockwise or degenerate)"
            )));
        }
        total += area;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidGeometry(format!(
            "triangle areas sum to {total}, expected 1 (mesh does not tile the unit cell)"
        )));
    }
    // conformity: every edge is shared by two triangles or lies on the cell boundary
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for &[a, b, c] in &mesh.triangles {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            *edge_count.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    for (&(u, v), &count) in &edge_count {
        if count > 2 {
            return Err(Error::InvalidGeometry(format!(
                "edge ({u}, {v}) is shared by {count} triangles"
            )));
        }
        if count == 1 {
            let p = mesh.vertices[u];
            let q = mesh.vertices[v];
            let on_boundary = (0..2).any(|axis| {
                (p[axis].abs() <= PAIR_TOL && q[axis].abs() <= PAIR_TOL)
                    || ((p[axis] - 1.0).abs() <= PAIR_TOL && (q[axis] - 1.0).abs() <= PAIR_TOL)
            });
            if !on_boundary {
                return Err(Error::InvalidGeometry(format!(
                    "interior edge ({u}, {v}) belongs to only one triangle (hanging node?)"
                )));
            }
        }
    }
    // opposite boundaries must pair up
    for axis in 0..2 {
        pair_boundary(&mesh.vertices, axis)?;
    }
    Ok(())
}

/// Parses the documented node/element text format. Tags come from the element
/// attribute column when present, otherwise from the centroid-in-disc rule.
pub fn import_mesh(node_text: &str, ele_text: &str, r: f64) -> Result<UnitCellMesh> {
    check_radius(r)?;
    let vertices = parse_nodes(node_text)?;
    let (triangles, attrs) = parse_elements(ele_text)?;

    let mut mesh = UnitCellMesh {
        vertices,
        triangles,
        material: Vec::new(),
        h: 0.0,
        disc_radius: r,
    };
    validate(&mesh)?;
    mesh.h = mesh.longest_edge();
    match attrs {
        Some(tags) => mesh.material = tags,
        None => mesh.retag(),
    }
    Ok(mesh)
}

fn parse_nodes(text: &str) -> Result<Vec<[f64; 2]>> {
    let mut lines = nonempty_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::ParseError("empty node file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 || head[1] != "2" {
        return Err(Error::ParseError(format!(
            "node header must be '<n_vertices> 2', got '{header}'"
        )));
    }
    let n: usize = head[0]
        .parse()
        .map_err(|_| Error::ParseError(format!("bad vertex count '{}'", head[0])))?;
    let mut vertices = vec![None; n];
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::ParseError(format!(
                "node line must be '<index> <x1> <x2>', got '{line}'"
            )));
        }
        let idx: usize = fields[0]
            .parse()
            .map_err(|_| Error::ParseError(format!("bad node index '{}'", fields[0])))?;
        if idx == 0 || idx > n {
            return Err(Error::ParseError(format!(
                "node index {idx} out of range 1..={n}"
            )));
        }
        let x: f64 = parse_f64(fields[1])?;
        let y: f64 = parse_f64(fields[2])?;
        if vertices[idx - 1].replace([x, y]).is_some() {
            return Err(Error::ParseError(format!("duplicate node index {idx}")));
        }
    }
    vertices
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::ParseError(format!("missing node index {}", i + 1))))
        .collect()
}

type Elements = (Vec<[usize; 3]>, Option<Vec<MaterialTag>>);

fn parse_elements(text: &str) -> Result<Elements> {
    let mut lines = nonempty_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::ParseError("empty element file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 || head[1] != "3" {
        return Err(Error::ParseError(format!(
            "element header must be '<n_triangles> 3 <n_attrs>', got '{header}'"
        )));
    }
    let n: usize = head[0]
        .parse()
        .map_err(|_| Error::ParseError(format!("bad triangle count '{}'", head[0])))?;
    let n_attrs: usize = head[2]
        .parse()
        .map_err(|_| Error::ParseError(format!("bad attribute count '{}'", head[2])))?;
    if n_attrs > 1 {
        return Err(Error::ParseError(format!(
            "at most one element attribute is supported, got {n_attrs}"
        )));
    }
    let mut triangles = vec![None; n];
    let mut tags = vec![MaterialTag::Background; n];
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 + n_attrs {
            return Err(Error::ParseError(format!(
                "element line must have {} fields, got '{line}'",
                4 + n_attrs
            )));
        }
        let idx: usize = fields[0]
            .parse()
            .map_err(|_| Error::ParseError(format!("bad element index '{}'", fields[0])))?;
        if idx == 0 || idx > n {
            return Err(Error::ParseError(format!(
                "element index {idx} out of range 1..={n}"
            )));
        }
        let mut tri = [0usize; 3];
        for (slot, field) in tri.iter_mut().zip(&fields[1..4]) {
            let v: usize = field
                .parse()
                .map_err(|_| Error::ParseError(format!("bad vertex index '{field}'")))?;
            if v == 0 {
                return Err(Error::ParseError("vertex indices are 1-based".into()));
            }
            *slot = v - 1;
        }
        if n_attrs == 1 {
            tags[idx - 1] = match fields[4] {
                "0" => MaterialTag::Background,
                "1" => MaterialTag::Inclusion,
                other => {
                    return Err(Error::ParseError(format!(
                        "region attribute must be 0 or 1, got '{other}'"
                    )))
                }
            };
        }
        if triangles[idx - 1].replace(tri).is_some() {
            return Err(Error::ParseError(format!("duplicate element index {idx}")));
        }
    }
    let triangles = triangles
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| Error::ParseError(format!("missing element index {}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((triangles, (n_attrs == 1).then_some(tags)))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::ParseError(format!("bad coordinate '{s}'")))
}

fn nonempty_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

/// Serializes the mesh in the node-file format (inverse of [`import_mesh`]).
pub fn node_file_string(mesh: &UnitCellMesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} 2", mesh.n_vertices());
    for (i, p) in mesh.vertices.iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", i + 1, p[0], p[1]);
    }
    out
}

/// Serializes the triangles with the region attribute column.
pub fn ele_file_string(mesh: &UnitCellMesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} 3 1", mesh.n_triangles());
    for (i, (tri, tag)) in mesh.triangles.iter().zip(&mesh.material).enumerate() {
        let region = match tag {
            MaterialTag::Background => 0,
            MaterialTag::Inclusion => 1,
        };
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            i + 1,
            tri[0] + 1,
            tri[1] + 1,
            tri[2] + 1,
            region
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn structured_small_counts() {
        let mesh = generate_structured(2, 0.1).unwrap();
        assert_eq!(mesh.n_vertices(), 9);
        assert_eq!(mesh.n_triangles(), 8);
        assert!((mesh.h - SQRT_2 / 2.0).abs() < 1e-15);
        // hand-enumerated centroids: none within 0.1 of the center
        assert!(mesh.material.iter().all(|&t| t == MaterialTag::Background));
    }

    #[test]
    fn structured_paper_mesh() {
        let mesh = generate_structured(10, 0.378).unwrap();
        assert_eq!(mesh.n_triangles(), 200);
        assert_eq!(mesh.n_vertices(), 121);
        assert!((mesh.h - SQRT_2 / 10.0).abs() < 1e-15);
        assert!(mesh.material.contains(&MaterialTag::Inclusion));
    }

    #[test]
    fn degenerate_radius_rejected() {
        assert!(matches!(
            generate_structured(2, 0.0),
            Err(Error::InvalidGeometry(_))
        ));
        assert!(matches!(
            generate_structured(2, 0.5),
            Err(Error::InvalidGeometry(_))
        ));
        assert!(matches!(
            generate_structured(1, 0.1),
            Err(Error::InvalidGeometry(_))
        ));
    }

    #[test]
    fn areas_sum_to_one() {
        for mesh in [
            generate_structured(2, 0.1).unwrap(),
            generate_structured(10, 0.378).unwrap(),
            refine_uniform(&generate_structured(7, 0.3).unwrap()),
        ] {
            let total: f64 = (0..mesh.n_triangles()).map(|t| mesh.triangle_area(t)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn inclusion_area_converges_to_disc() {
        let r: f64 = 0.378;
        let mesh = generate_structured(80, r).unwrap();
        let inclusion: f64 = (0..mesh.n_triangles())
            .filter(|&t| mesh.material[t] == MaterialTag::Inclusion)
            .map(|t| mesh.triangle_area(t))
            .sum();
        let exact = PI * r * r;
        assert!((inclusion - exact).abs() / exact < 0.05);
    }

    #[test]
    fn refine_quadruples_triangles_and_halves_h() {
        let mesh = generate_structured(10, 0.378).unwrap();
        let fine = refine_uniform(&mesh);
        assert_eq!(fine.n_triangles(), 800);
        assert!((fine.h - SQRT_2 / 20.0).abs() < 1e-15);
        let finer = refine_uniform(&fine);
        assert!((finer.h - mesh.h / 4.0).abs() < 1e-15);
        // periodic identification still works after refinement
        let dofs = build_periodic_dof_map(&finer).unwrap();
        assert_eq!(dofs.n_dofs, 40 * 40);
    }

    #[test]
    fn dof_counts() {
        // n=2: 1 interior vertex, 2 edge pairs, 1 corner orbit -> 4 DOFs
        let mesh = generate_structured(2, 0.1).unwrap();
        let dofs = build_periodic_dof_map(&mesh).unwrap();
        assert_eq!(dofs.n_dofs, 4);

        let mesh = generate_structured(10, 0.378).unwrap();
        let dofs = build_periodic_dof_map(&mesh).unwrap();
        assert_eq!(dofs.n_dofs, 100);
    }

    #[test]
    fn dof_map_is_surjective() {
        let mesh = generate_structured(6, 0.25).unwrap();
        let dofs = build_periodic_dof_map(&mesh).unwrap();
        let mut seen = vec![false; dofs.n_dofs];
        for &d in &dofs.dof_of_vertex {
            assert!(d < dofs.n_dofs);
            seen[d] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn corners_share_one_dof() {
        let mesh = generate_structured(4, 0.2).unwrap();
        let dofs = build_periodic_dof_map(&mesh).unwrap();
        let corner_dofs: Vec<usize> = mesh
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                (p[0].abs() <= PAIR_TOL || (p[0] - 1.0).abs() <= PAIR_TOL)
                    && (p[1].abs() <= PAIR_TOL || (p[1] - 1.0).abs() <= PAIR_TOL)
            })
            .map(|(i, _)| dofs.dof_of_vertex[i])
            .collect();
        assert_eq!(corner_dofs.len(), 4);
        assert!(corner_dofs.iter().all(|&d| d == corner_dofs[0]));
    }

    #[test]
    fn import_round_trip() {
        let mesh = generate_structured(10, 0.378).unwrap();
        let nodes = node_file_string(&mesh);
        let eles = ele_file_string(&mesh);
        let back = import_mesh(&nodes, &eles, 0.378).unwrap();
        assert_eq!(mesh, back);
    }

    #[test]
    fn clockwise_triangle_rejected() {
        let nodes = "3 2\n1 0 0\n2 1 0\n3 1 1\n";
        let eles = "1 3 0\n1 1 3 2\n"; // clockwise
        assert!(matches!(
            import_mesh(nodes, eles, 0.2),
            Err(Error::InvalidGeometry(_))
        ));
    }

    #[test]
    fn unpaired_boundary_vertex_rejected() {
        // bottom edge has a midpoint vertex, top edge does not
        let nodes = "5 2\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n5 0.5 0\n";
        let eles = "3 3 0\n1 1 5 4\n2 5 3 4\n3 5 2 3\n";
        assert!(matches!(
            import_mesh(nodes, eles, 0.2),
            Err(Error::NonMatchingBoundary(_))
        ));
    }

    #[test]
    fn attribute_column_overrides_centroid_rule() {
        // fan around the center: all four centroids are ~0.33 from the center,
        // so with r = 0.1 the centroid rule would tag everything Background
        let nodes = "5 2\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n5 0.5 0.5\n";
        let eles = "4 3 1\n1 1 2 5 1\n2 2 3 5 0\n3 3 4 5 1\n4 4 1 5 0\n";
        let mesh = import_mesh(nodes, eles, 0.1).unwrap();
        assert_eq!(
            mesh.material,
            vec![
                MaterialTag::Inclusion,
                MaterialTag::Background,
                MaterialTag::Inclusion,
                MaterialTag::Background
            ]
        );
        // same mesh without the attribute column falls back to the centroid rule
        let eles_plain = "4 3 0\n1 1 2 5\n2 2 3 5\n3 3 4 5\n4 4 1 5\n";
        let mesh = import_mesh(nodes, eles_plain, 0.1).unwrap();
        assert!(mesh.material.iter().all(|&t| t == MaterialTag::Background));
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(matches!(
            import_mesh("", "1 3 0\n", 0.2),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            import_mesh("2 3\n", "1 3 0\n", 0.2),
            Err(Error::ParseError(_))
        ));
        let nodes = "4 2\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n";
        assert!(matches!(
            import_mesh(nodes, "2 3 0\n1 1 2 3\n", 0.2), // missing element 2
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            import_mesh(nodes, "1 3 0\n1 1 2 nine\n", 0.2),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn hanging_node_rejected() {
        // vertex 5 sits on the diagonal of triangle (1,3,4) -> nonconforming
        let nodes = "5 2\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n5 0.5 0.5\n";
        let eles = "3 3 0\n1 1 2 5\n2 2 3 5\n3 1 3 4\n";
        assert!(matches!(
            import_mesh(nodes, eles, 0.2),
            Err(Error::InvalidGeometry(_))
        ));
    }
}
