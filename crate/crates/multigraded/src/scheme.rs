//! Zero-dimensional schemes: reduced points, tangent vectors and double
//! points, random "general" configurations, fiber-constrained
//! configurations, and residuation with respect to pulled-back hyperplanes.
//!
//! Points are stored with a normalized representative (last nonzero
//! coordinate scaled to 1) so scheme descriptions compare and hash
//! consistently; evaluation elsewhere accepts any representative. A tangent
//! direction lives in the affine chart of its support: one entry per
//! non-pivot coordinate, factors concatenated.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ring::Space;

/// A point of the multiprojective space, one coordinate vector per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<Vec<u64>>,
}

impl Point {
    /// Scales each factor so its last nonzero coordinate equals 1.
    pub fn normalize(&self, field: &PrimeField) -> Result<Point> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for (i, c) in self.coords.iter().enumerate() {
            let Some(last) = c.iter().rposition(|&x| x != 0) else {
                return Err(Error::ZeroCoordinates(i));
            };
            let inv = field.inv(c[last]);
            coords.push(c.iter().map(|&x| field.mul(x, inv)).collect());
        }
        Ok(Point { coords })
    }

    /// Chart pivot per factor: the index of the last nonzero coordinate.
    pub fn chart_pivots(&self) -> Vec<usize> {
        self.coords
            .iter()
            .map(|c| c.iter().rposition(|&x| x != 0).expect("nonzero point"))
            .collect()
    }

    /// Chart variables in functional order: `(factor, coordinate)` pairs for
    /// every non-pivot coordinate, factors in order.
    pub fn chart_vars(&self) -> Vec<(usize, usize)> {
        let pivots = self.chart_pivots();
        let mut vars = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            for j in 0..c.len() {
                if j != pivots[i] {
                    vars.push((i, j));
                }
            }
        }
        vars
    }
}

/// Kind of a local component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Reduced,
    Tangent,
    Double,
}

/// One connected component of a zero-dimensional scheme.
///
/// * `Reduced`: a simple point, degree 1.
/// * `Tangent`: a point plus a tangent direction (curvilinear of degree 2).
/// * `Double`: the full first infinitesimal neighborhood, degree `1 + dim X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalComponent {
    pub kind: ComponentKind,
    pub point: Point,
    /// Chart direction, present exactly for `Tangent`; length `dim X`.
    pub direction: Option<Vec<u64>>,
}

impl LocalComponent {
    pub fn reduced(point: Point) -> Self {
        LocalComponent {
            kind: ComponentKind::Reduced,
            point,
            direction: None,
        }
    }

    pub fn tangent(point: Point, direction: Vec<u64>) -> Self {
        LocalComponent {
            kind: ComponentKind::Tangent,
            point,
            direction: Some(direction),
        }
    }

    pub fn double(point: Point) -> Self {
        LocalComponent {
            kind: ComponentKind::Double,
            point,
            direction: None,
        }
    }

    pub fn degree(&self, space: &Space) -> usize {
        match self.kind {
            ComponentKind::Reduced => 1,
            ComponentKind::Tangent => 2,
            ComponentKind::Double => 1 + space.total_dim() as usize,
        }
    }
}

/// A finite zero-dimensional scheme with pairwise distinct supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroScheme {
    space: Space,
    components: Vec<LocalComponent>,
}

impl ZeroScheme {
    pub fn empty(space: Space) -> Self {
        ZeroScheme {
            space,
            components: Vec::new(),
        }
    }

    /// Validates distinct supports, normalized points, direction shapes.
    pub fn new(space: Space, components: Vec<LocalComponent>, field: &PrimeField) -> Result<Self> {
        let mut normalized = Vec::with_capacity(components.len());
        for c in components {
            if c.point.coords.len() != space.k() {
                return Err(Error::InvalidScheme(format!(
                    "point has {} factors, space has {}",
                    c.point.coords.len(),
                    space.k()
                )));
            }
            for (i, v) in c.point.coords.iter().enumerate() {
                if v.len() != space.dim(i) as usize + 1 {
                    return Err(Error::InvalidScheme(format!(
                        "factor {} coordinate vector has length {}, expected {}",
                        i + 1,
                        v.len(),
                        space.dim(i) + 1
                    )));
                }
            }
            let point = c.point.normalize(field)?;
            let direction = match (c.kind, c.direction) {
                (ComponentKind::Tangent, Some(d)) => {
                    if d.len() != space.total_dim() as usize {
                        return Err(Error::InvalidScheme(format!(
                            "direction has length {}, expected {}",
                            d.len(),
                            space.total_dim()
                        )));
                    }
                    if d.iter().all(|&x| x == 0) {
                        return Err(Error::InvalidScheme(
                            "tangent direction must be nonzero".into(),
                        ));
                    }
                    Some(d)
                }
                (ComponentKind::Tangent, None) => {
                    return Err(Error::InvalidScheme(
                        "tangent component needs a direction".into(),
                    ))
                }
                (_, Some(_)) => {
                    return Err(Error::InvalidScheme(
                        "direction is only meaningful for tangent components".into(),
                    ))
                }
                (_, None) => None,
            };
            normalized.push(LocalComponent {
                kind: c.kind,
                point,
                direction,
            });
        }
        for (i, a) in normalized.iter().enumerate() {
            for b in normalized.iter().skip(i + 1) {
                if a.point == b.point {
                    return Err(Error::InvalidScheme(
                        "component supports must be pairwise distinct".into(),
                    ));
                }
            }
        }
        Ok(ZeroScheme {
            space,
            components: normalized,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn components(&self) -> &[LocalComponent] {
        &self.components
    }

    /// `deg(Z)`: the sum of component degrees.
    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.degree(&self.space))
            .sum()
    }

    pub fn supports(&self) -> Vec<&Point> {
        self.components.iter().map(|c| &c.point).collect()
    }

    pub fn is_support(&self, p: &Point, field: &PrimeField) -> bool {
        match p.normalize(field) {
            Ok(n) => self.components.iter().any(|c| c.point == n),
            Err(_) => false,
        }
    }

    /// `s` components of one kind at uniformly random points, distinct
    /// supports, deterministic given the seed.
    pub fn random_general(
        space: &Space,
        s: usize,
        kind: ComponentKind,
        seed: u64,
        field: &PrimeField,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut scheme = ZeroScheme::empty(space.clone());
        for _ in 0..s {
            scheme.push_random(kind, &mut rng, field);
        }
        scheme
    }

    /// Random components of mixed kinds until `target_degree` is reached
    /// exactly (tail-padded with reduced points when a larger kind no
    /// longer fits).
    pub fn random_mixed(space: &Space, target_degree: usize, seed: u64, field: &PrimeField) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut scheme = ZeroScheme::empty(space.clone());
        let double_deg = 1 + space.total_dim() as usize;
        while scheme.degree() < target_degree {
            let left = target_degree - scheme.degree();
            let kind = match rng.gen_range(0..3u8) {
                0 => ComponentKind::Reduced,
                1 if left >= 2 => ComponentKind::Tangent,
                2 if left >= double_deg => ComponentKind::Double,
                _ => ComponentKind::Reduced,
            };
            scheme.push_random(kind, &mut rng, field);
        }
        scheme
    }

    /// `s` reduced points inside the fiber `pi_i^{-1}(p)`.
    pub fn random_in_fiber(
        space: &Space,
        i: usize,
        p: &[u64],
        s: usize,
        seed: u64,
        field: &PrimeField,
    ) -> Result<Self> {
        if space.k() == 1 && s > 1 {
            return Err(Error::UnsupportedScheme(
                "a fiber of a single-factor space is one point; supports would collide".into(),
            ));
        }
        if p.len() != space.dim(i) as usize + 1 || p.iter().all(|&x| x == 0) {
            return Err(Error::InvalidScheme(
                "fiber base point must be a nonzero coordinate vector".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut scheme = ZeroScheme::empty(space.clone());
        for _ in 0..s {
            loop {
                let mut coords = random_point_coords(space, &mut rng, field);
                coords[i] = p.to_vec();
                let point = Point { coords }.normalize(field).expect("nonzero");
                if scheme.components.iter().all(|c| c.point != point) {
                    scheme.components.push(LocalComponent::reduced(point));
                    break;
                }
            }
        }
        Ok(scheme)
    }

    fn push_random<R: Rng>(&mut self, kind: ComponentKind, rng: &mut R, field: &PrimeField) {
        loop {
            let coords = random_point_coords(&self.space, rng, field);
            let point = Point { coords }.normalize(field).expect("nonzero");
            if self.components.iter().any(|c| c.point == point) {
                continue;
            }
            let direction = match kind {
                ComponentKind::Tangent => Some(random_direction(&self.space, rng, field)),
                _ => None,
            };
            self.components.push(LocalComponent {
                kind,
                point,
                direction,
            });
            return;
        }
    }

    /// Residue of the scheme with respect to `D = pi_i^{-1}(H)`, `H` the
    /// hyperplane cut out by the linear form `form` on factor `i`.
    ///
    /// Components off `D` are unchanged. On `D`: a reduced point drops out,
    /// a double point leaves its reduced support, and a tangent vector
    /// drops out when its direction is tangent to `D` (the whole length-2
    /// scheme lies inside `D`) and leaves the reduced support otherwise.
    pub fn residual(&self, i: usize, form: &[u64], field: &PrimeField) -> Result<ZeroScheme> {
        if form.len() != self.space.dim(i) as usize + 1 {
            return Err(Error::InvalidScheme(format!(
                "hyperplane form on factor {} must have {} coefficients",
                i + 1,
                self.space.dim(i) + 1
            )));
        }
        let mut components = Vec::new();
        for c in &self.components {
            let value = crate::linalg::dot(form, &c.point.coords[i], field);
            if value != 0 {
                components.push(c.clone());
                continue;
            }
            match c.kind {
                ComponentKind::Reduced => {}
                ComponentKind::Double => {
                    components.push(LocalComponent::reduced(c.point.clone()));
                }
                ComponentKind::Tangent => {
                    // derivative of the pulled-back form along the chart direction
                    let dir = c.direction.as_ref().expect("tangent has direction");
                    let mut deriv = 0u64;
                    for (slot, &(factor, j)) in c.point.chart_vars().iter().enumerate() {
                        if factor == i {
                            deriv = field.add(deriv, field.mul(dir[slot], form[j]));
                        }
                    }
                    if deriv != 0 {
                        components.push(LocalComponent::reduced(c.point.clone()));
                    }
                }
            }
        }
        Ok(ZeroScheme {
            space: self.space.clone(),
            components,
        })
    }

    /// Stable identifier derived from the serialized description.
    pub fn id(&self) -> String {
        let json = serde_json::to_string(&self.to_file()).expect("scheme serializes");
        // FNV-1a, enough for a report label
        let mut h: u64 = 0xcbf29ce484222325;
        for b in json.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }

    pub fn to_file(&self) -> SchemeFile {
        SchemeFile {
            space: self.space.0.clone(),
            components: self
                .components
                .iter()
                .map(|c| ComponentFile {
                    kind: c.kind,
                    point: c
                        .point
                        .coords
                        .iter()
                        .map(|v| v.iter().map(|&x| x as i64).collect())
                        .collect(),
                    direction: c
                        .direction
                        .as_ref()
                        .map(|d| d.iter().map(|&x| x as i64).collect()),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &SchemeFile, field: &PrimeField) -> Result<Self> {
        let space = Space::new(file.space.clone())?;
        let components = file
            .components
            .iter()
            .map(|c| LocalComponent {
                kind: c.kind,
                point: Point {
                    coords: c
                        .point
                        .iter()
                        .map(|v| v.iter().map(|&x| field.reduce_i64(x)).collect())
                        .collect(),
                },
                direction: c
                    .direction
                    .as_ref()
                    .map(|d| d.iter().map(|&x| field.reduce_i64(x)).collect()),
            })
            .collect();
        ZeroScheme::new(space, components, field)
    }
}

/// On-disk scheme description; integers are interpreted mod p at load time.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub space: Vec<u32>,
    pub components: Vec<ComponentFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub kind: ComponentKind,
    pub point: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<i64>>,
}

fn random_point_coords<R: Rng>(space: &Space, rng: &mut R, field: &PrimeField) -> Vec<Vec<u64>> {
    space
        .0
        .iter()
        .map(|&n| loop {
            let v: Vec<u64> = (0..=n).map(|_| field.random(rng)).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        })
        .collect()
}

fn random_direction<R: Rng>(space: &Space, rng: &mut R, field: &PrimeField) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..space.total_dim()).map(|_| field.random(rng)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn p11() -> Space {
        Space::new(vec![1, 1]).unwrap()
    }

    #[test]
    fn degrees_by_kind() {
        let f = field();
        assert_eq!(ZeroScheme::empty(p11()).degree(), 0);
        let z = ZeroScheme::random_general(&p11(), 5, ComponentKind::Reduced, 1, &f);
        assert_eq!(z.degree(), 5);
        let z = ZeroScheme::random_general(&p11(), 1, ComponentKind::Double, 1, &f);
        assert_eq!(z.degree(), 3);
        let s22 = Space::new(vec![2, 2]).unwrap();
        let z = ZeroScheme::random_general(&s22, 1, ComponentKind::Double, 1, &f);
        assert_eq!(z.degree(), 5);
    }

    #[test]
    fn same_seed_same_scheme() {
        let f = field();
        let a = ZeroScheme::random_general(&p11(), 4, ComponentKind::Tangent, 42, &f);
        let b = ZeroScheme::random_general(&p11(), 4, ComponentKind::Tangent, 42, &f);
        assert_eq!(a, b);
        let c = ZeroScheme::random_general(&p11(), 4, ComponentKind::Tangent, 43, &f);
        assert_ne!(a, c);
    }

    #[test]
    fn supports_are_distinct() {
        let f = field();
        let z = ZeroScheme::random_mixed(&p11(), 12, 7, &f);
        assert_eq!(z.degree(), 12);
        let supports = z.supports();
        for (i, a) in supports.iter().enumerate() {
            for b in supports.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn fiber_scheme_projects_to_one_point() {
        let f = field();
        let p = vec![3, 1];
        let z = ZeroScheme::random_in_fiber(&p11(), 0, &p, 3, 5, &f).unwrap();
        assert_eq!(z.degree(), 3);
        let expected = Point {
            coords: vec![p.clone(), vec![1, 1]],
        }
        .normalize(&f)
        .unwrap()
        .coords[0]
            .clone();
        for c in z.components() {
            assert_eq!(c.point.coords[0], expected);
        }
    }

    #[test]
    fn residual_cases() {
        let f = field();
        let space = p11();
        let pt = Point {
            coords: vec![vec![1, 1], vec![2, 1]],
        };
        // hyperplane x_{10} - x_{11} = 0 on factor 1 passes through pt
        let through: Vec<u64> = vec![1, f.neg(1)];
        let misses: Vec<u64> = vec![1, 1];

        let z = ZeroScheme::new(space.clone(), vec![LocalComponent::reduced(pt.clone())], &f)
            .unwrap();
        assert_eq!(z.residual(0, &misses, &f).unwrap(), z);
        assert_eq!(z.residual(0, &through, &f).unwrap().degree(), 0);

        let z = ZeroScheme::new(space.clone(), vec![LocalComponent::double(pt.clone())], &f)
            .unwrap();
        let r = z.residual(0, &through, &f).unwrap();
        assert_eq!(r.degree(), 1);
        assert_eq!(r.components()[0].kind, ComponentKind::Reduced);

        // chart vars at pt are (factor 0, j=0) and (factor 1, j=0);
        // the pulled-back form only sees the factor-0 slot.
        let transverse =
            ZeroScheme::new(space.clone(), vec![LocalComponent::tangent(pt.clone(), vec![1, 0])], &f)
                .unwrap();
        assert_eq!(transverse.residual(0, &through, &f).unwrap().degree(), 1);

        let tangent_to_d =
            ZeroScheme::new(space, vec![LocalComponent::tangent(pt, vec![0, 1])], &f).unwrap();
        assert_eq!(tangent_to_d.residual(0, &through, &f).unwrap().degree(), 0);
    }

    #[test]
    fn json_round_trip() {
        let f = field();
        let z = ZeroScheme::random_mixed(&p11(), 6, 11, &f);
        let text = serde_json::to_string(&z.to_file()).unwrap();
        let parsed: SchemeFile = serde_json::from_str(&text).unwrap();
        let back = ZeroScheme::from_file(&parsed, &f).unwrap();
        assert_eq!(z, back);
    }

    #[test]
    fn rejects_malformed_components() {
        let f = field();
        let bad: std::result::Result<SchemeFile, _> =
            serde_json::from_str(r#"{"space":[1,1],"components":[{"kind":"line","point":[[1,0],[0,1]]}]}"#);
        assert!(bad.is_err());

        let missing_direction = SchemeFile {
            space: vec![1, 1],
            components: vec![ComponentFile {
                kind: ComponentKind::Tangent,
                point: vec![vec![1, 0], vec![0, 1]],
                direction: None,
            }],
        };
        assert!(ZeroScheme::from_file(&missing_direction, &f).is_err());

        let duplicate = SchemeFile {
            space: vec![1, 1],
            components: vec![
                ComponentFile {
                    kind: ComponentKind::Reduced,
                    point: vec![vec![2, 1], vec![3, 1]],
                    direction: None,
                },
                ComponentFile {
                    kind: ComponentKind::Reduced,
                    point: vec![vec![4, 2], vec![3, 1]],
                    direction: None,
                },
            ],
        };
        assert!(matches!(
            ZeroScheme::from_file(&duplicate, &f),
            Err(Error::InvalidScheme(_))
        ));
    }
}
