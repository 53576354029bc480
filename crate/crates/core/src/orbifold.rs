//! Compact 2-orbifolds with conical singularities: signatures, Euler characteristic, type,
//! standard presentations, and splittings of the fundamental group along curves and arcs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::presentation::{commutator, power, AbelianInvariants, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("cannot parse signature `{0}`; expected `g,h;p1,p2,...`")]
    Parse(String),
    #[error("cone point orders must be at least 2")]
    BadOrder,
    #[error("triangular orbifolds do not split")]
    TriangularOrbifold,
    #[error("orbifold is not of hyperbolic type")]
    NotHyperbolicType,
}

/// `O(g, h; p_1, ..., p_k)`: genus `g` (negative for the non-orientable genus `|g|`), `h`
/// boundary components, cone points of orders `p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub g: i32,
    pub h: u32,
    pub orders: Vec<u32>,
}

impl Signature {
    pub fn new(g: i32, h: u32, orders: Vec<u32>) -> Result<Self, OrbifoldError> {
        if orders.iter().any(|&p| p < 2) {
            return Err(OrbifoldError::BadOrder);
        }
        Ok(Self { g, h, orders })
    }

    /// Parses `g,h;p1,p2,...`; the part after `;` may be empty or absent.
    pub fn parse(text: &str) -> Result<Self, OrbifoldError> {
        let err = || OrbifoldError::Parse(text.to_string());
        let (head, tail) = text.split_once(';').unwrap_or((text, ""));
        let (g, h) = head.split_once(',').ok_or_else(err)?;
        let g = g.trim().parse().map_err(|_| err())?;
        let h = h.trim().parse().map_err(|_| err())?;
        let orders = tail
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| err()))
            .collect::<Result<Vec<u32>, _>>()?;
        Self::new(g, h, orders)
    }

    pub fn orientable(&self) -> bool {
        self.g >= 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        write!(f, "O({},{};{})", self.g, self.h, orders.join(","))
    }
}

/// `2 - 2g - h - sum(1 - 1/p_i)`, with `2 - |g|` in place of `2 - 2g` when non-orientable.
pub fn euler_char(sig: &Signature) -> BigRational {
    let surface = if sig.g >= 0 {
        2 - 2 * sig.g as i64
    } else {
        2 - sig.g.unsigned_abs() as i64
    };
    let mut chi = BigRational::from_integer(BigInt::from(surface - sig.h as i64));
    for &p in &sig.orders {
        chi -= BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p));
    }
    chi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbifoldType {
    Bad,
    SphericalType,
    EuclideanType,
    HyperbolicType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: OrbifoldType,
    /// A closed sphere with three cone points.
    pub triangular: bool,
}

/// Type by the sign of the Euler characteristic; positive characteristic with
/// `lcm(p_i) * chi` outside `{1, 2}` is bad.
pub fn classify(sig: &Signature) -> Classification {
    let chi = euler_char(sig);
    let kind = if chi.is_negative() {
        OrbifoldType::HyperbolicType
    } else if chi.is_zero() {
        OrbifoldType::EuclideanType
    } else {
        let lcm = sig
            .orders
            .iter()
            .fold(BigInt::one(), |l, &p| l.lcm(&BigInt::from(p)));
        let scaled = BigRational::from_integer(lcm) * &chi;
        let good =
            scaled == BigRational::one() || scaled == BigRational::from_integer(BigInt::from(2));
        if good {
            OrbifoldType::SphericalType
        } else {
            OrbifoldType::Bad
        }
    };
    Classification {
        kind,
        triangular: sig.g == 0 && sig.h == 0 && sig.orders.len() == 3,
    }
}

/// The standard presentation: handle generators `a_i, b_i` (or crosscap generators `a_i`),
/// cone generators `c_j`, boundary generators `d_l`, with the product relator and `c_j^p_j`.
pub fn presentation(sig: &Signature) -> Presentation {
    let mut p = Presentation::new(Vec::new());
    let mut product: Word = Vec::new();
    if sig.g >= 0 {
        for i in 1..=sig.g {
            let a = p.add_generator(format!("a{i}"));
            let b = p.add_generator(format!("b{i}"));
            product.extend(commutator(a, b));
        }
    } else {
        for i in 1..=sig.g.unsigned_abs() {
            let a = p.add_generator(format!("a{i}"));
            product.extend([a, a]);
        }
    }
    let mut cones = Vec::new();
    for (j, &order) in sig.orders.iter().enumerate() {
        let c = p.add_generator(format!("c{}", j + 1));
        product.push(c);
        cones.push(power(&[c], order));
    }
    for l in 1..=sig.h {
        let d = p.add_generator(format!("d{l}"));
        product.push(d);
    }
    p.relators.push(product);
    p.relators.extend(cones);
    p
}

/// Free rank of the abelianization read off the signature, independently of any presentation.
pub fn abelian_rank_from_signature(sig: &Signature) -> usize {
    let handles = if sig.g >= 0 {
        2 * sig.g as usize
    } else {
        sig.g.unsigned_abs() as usize
    };
    if sig.h > 0 {
        handles + sig.h as usize - 1
    } else if sig.g >= 0 {
        handles
    } else {
        handles - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitKind {
    Amalgam,
    Hnn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeGroup {
    Trivial,
    /// Infinite cyclic, generated by the class of the cutting curve.
    Cyclic,
}

/// How an orbifold group splits. For amalgams the pieces are `O_1`, `O_2`; for HNN extensions
/// the single piece is `O'` with the two boundary classes identified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingDescription {
    pub kind: SplitKind,
    pub pieces: Vec<Signature>,
    pub edge: EdgeGroup,
    /// What was cut: `"arc"` for trivial edges, `"curve"` otherwise.
    pub cut: &'static str,
    /// Declared acylindricity constant of the splitting.
    pub acylindricity: u32,
    /// True when the edge group is finite, so the splitting is a graph of finite groups.
    pub executable: bool,
    /// For executable splittings, the free product of cyclic groups in the group-file format.
    pub group_file: Option<String>,
}

impl SplittingDescription {
    /// `chi(O_1) + chi(O_2)` for curves, minus one per arc; for HNN the single piece.
    pub fn glued_euler_char(&self) -> BigRational {
        let sum = self
            .pieces
            .iter()
            .map(euler_char)
            .fold(BigRational::zero(), |a, b| a + b);
        match self.edge {
            EdgeGroup::Cyclic => sum,
            EdgeGroup::Trivial => sum - BigRational::one(),
        }
    }

    /// Presentation of the amalgam or HNN extension assembled from the piece presentations,
    /// identifying the boundary classes of the cut.
    pub fn presentation(&self) -> Presentation {
        let mut p = Presentation::new(Vec::new());
        let mut boundary = Vec::new();
        for (n, piece) in self.pieces.iter().enumerate() {
            let q = presentation(piece);
            let offset = p.generators.len() as i32;
            for name in &q.generators {
                p.add_generator(format!("{name}_{}", n + 1));
            }
            for r in &q.relators {
                p.relators
                    .push(r.iter().map(|&l| l.signum() * (l.abs() + offset)).collect());
            }
            // boundary generators of the piece are its last `h` generators
            let h = piece.h as i32;
            let total = q.generators.len() as i32;
            boundary.push((offset + total - h + 1..=offset + total).collect::<Vec<i32>>());
        }
        match (self.kind, self.edge) {
            (SplitKind::Amalgam, EdgeGroup::Cyclic) => {
                // the new boundary is the last boundary generator of each piece
                let (d1, d2) = (*boundary[0].last().unwrap(), *boundary[1].last().unwrap());
                p.relators.push(vec![d1, d2]);
            }
            (SplitKind::Hnn, _) => {
                let b = &boundary[0];
                let (d1, d2) = (b[b.len() - 2], b[b.len() - 1]);
                let t = p.add_generator("t");
                p.relators.push(vec![t, d1, -t, d2]);
            }
            (SplitKind::Amalgam, EdgeGroup::Trivial) => {
                // an arc joins the two boundary components into one
                let (d1, d2) = (*boundary[0].last().unwrap(), *boundary[1].last().unwrap());
                let d = p.add_generator("d");
                p.relators.push(vec![d1, d2, -d]);
            }
        }
        p
    }
}

fn orientable_or_not(handles: i32, orientable: bool) -> i32 {
    if orientable {
        handles
    } else {
        -handles
    }
}

/// The splitting of the orbifold group obtained by cutting along one curve or arc.
///
/// With boundary, an arc cuts off a disc around the first cone point, or an annulus, leaving a
/// free product. Closed orbifolds are cut along a non-separating curve (orientable genus at
/// least one), a curve around the first two cone points (genus zero), a curve around all cone
/// points leaving a Möbius band (one crosscap), or a curve cutting off one crosscap with the
/// first cone point, or two crosscaps when there are none (more crosscaps).
pub fn splitting(sig: &Signature) -> Result<SplittingDescription, OrbifoldError> {
    let class = classify(sig);
    if class.kind != OrbifoldType::HyperbolicType {
        return Err(OrbifoldError::NotHyperbolicType);
    }
    if class.triangular {
        return Err(OrbifoldError::TriangularOrbifold);
    }
    let sub = |g: i32, h: u32, orders: &[u32]| Signature {
        g,
        h,
        orders: orders.to_vec(),
    };
    let curve = |kind, pieces| SplittingDescription {
        kind,
        pieces,
        edge: EdgeGroup::Cyclic,
        cut: "curve",
        acylindricity: 2,
        executable: false,
        group_file: None,
    };
    let (g, h, o) = (sig.g, sig.h, &sig.orders[..]);
    if h > 0 {
        let (first, rest) = if let Some((&p, rest)) = o.split_first() {
            (sub(0, 1, &[p]), sub(g, h, rest))
        } else if h >= 2 {
            (sub(0, 2, &[]), sub(g, h - 1, &[]))
        } else if g > 0 {
            (sub(0, 2, &[]), sub(g - 1, h + 1, &[]))
        } else {
            (
                sub(0, 2, &[]),
                sub(orientable_or_not(g.abs() - 1, false), h, &[]),
            )
        };
        let pieces = vec![first, rest];
        return Ok(SplittingDescription {
            kind: SplitKind::Amalgam,
            edge: EdgeGroup::Trivial,
            cut: "arc",
            acylindricity: 0,
            executable: true,
            group_file: Some(free_product_file(sig)),
            pieces,
        });
    }
    Ok(match g {
        g if g >= 1 => curve(SplitKind::Hnn, vec![sub(g - 1, 2, o)]),
        0 => curve(
            SplitKind::Amalgam,
            vec![sub(0, 1, &o[..2]), sub(0, 1, &o[2..])],
        ),
        -1 => curve(SplitKind::Amalgam, vec![sub(0, 1, o), sub(-1, 1, &[])]),
        g => {
            if let Some((&p, rest)) = o.split_first() {
                curve(
                    SplitKind::Amalgam,
                    vec![sub(-1, 1, &[p]), sub(g + 1, 1, rest)],
                )
            } else {
                curve(
                    SplitKind::Amalgam,
                    vec![sub(-2, 1, &[]), sub(g + 2, 1, &[])],
                )
            }
        }
    })
}

/// Free rank of the group of an orbifold with boundary.
fn free_rank_with_boundary(sig: &Signature) -> u32 {
    let handles = if sig.g >= 0 {
        2 * sig.g as u32
    } else {
        sig.g.unsigned_abs()
    };
    handles + sig.h - 1
}

/// The orbifold group with nonempty boundary as a free product of cyclic groups, written as a
/// group file.
fn free_product_file(sig: &Signature) -> String {
    let mut s = format!("# {sig} as a free product of cyclic groups.\n[group]\nname = orbifold\nkind = free_product\n");
    for (j, p) in sig.orders.iter().enumerate() {
        s.push_str(&format!("vertex C{} = cyclic {p} c{}\n", j + 1, j + 1));
    }
    for i in 1..=free_rank_with_boundary(sig) {
        s.push_str(&format!("vertex F{i} = infinite f{i}\n"));
    }
    s
}

/// Abelian invariants of the standard presentation and of the assembled splitting.
pub fn splitting_consistency(
    sig: &Signature,
    split: &SplittingDescription,
) -> (AbelianInvariants, AbelianInvariants) {
    (
        presentation(sig).abelian_invariants(),
        split.presentation().abelian_invariants(),
    )
}

/// Rational number as `a/b` or `a`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
