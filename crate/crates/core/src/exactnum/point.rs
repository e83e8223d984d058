//! Planar points as complex cyclotomic numbers, and exact geometric predicates with a
//! certified floating-point filter in front of the exact fallback.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::{CycloNum, ExactError, Iv, PiRational};

#[derive(Clone)]
pub struct Point {
    z: CycloNum,
    enc: OnceLock<(Iv, Iv)>,
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.z == other.z
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.z.hash(state);
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.z.to_f64();
        write!(f, "({x:.6}, {y:.6})")
    }
}

impl Point {
    /// Needs `4 | M` so that `i` lies in the field.
    pub fn new(z: CycloNum) -> Point {
        assert!(z.order().is_multiple_of(4), "points need a field order divisible by 4");
        Point { z, enc: OnceLock::new() }
    }

    pub fn origin(order: u32) -> Point {
        Point::new(CycloNum::zero(order))
    }

    pub fn from_xy(x: &CycloNum, y: &CycloNum) -> Point {
        Point::new(x + &y.mul_i())
    }

    pub fn z(&self) -> &CycloNum {
        &self.z
    }

    pub fn into_z(self) -> CycloNum {
        self.z
    }

    pub fn order(&self) -> u32 {
        self.z.order()
    }

    pub fn x(&self) -> CycloNum {
        self.z.re()
    }

    pub fn y(&self) -> CycloNum {
        self.z.im()
    }

    /// Certified f64 boxes around the coordinates.
    pub fn enclosure(&self) -> (Iv, Iv) {
        *self.enc.get_or_init(|| {
            let (re, im) = self.z.approx(64);
            (re.to_iv(), im.to_iv())
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let (x, y) = self.enclosure();
        (x.mid(), y.mid())
    }

    pub fn translate(&self, v: &CycloNum) -> Point {
        Point::new(&self.z + v)
    }

    pub fn promote(&self, order: u32) -> Result<Point, ExactError> {
        Ok(Point::new(self.z.promote(order)?))
    }

    /// Rotation about the origin.
    pub fn rotate(&self, a: PiRational) -> Result<Point, ExactError> {
        Ok(Point::new(self.z.rotate(a)?))
    }

    pub fn conj(&self) -> Point {
        Point::new(self.z.conj())
    }
}

fn filtered(f: impl FnOnce() -> Iv, exact: impl FnOnce() -> i8) -> i8 {
    match f().sign() {
        Some(s) => s,
        None => exact(),
    }
}

/// Sign of the signed area of the triangle `a, b, c` (+1 counterclockwise).
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    filtered(
        || {
            let (ax, ay) = a.enclosure();
            let (bx, by) = b.enclosure();
            let (cx, cy) = c.enclosure();
            (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        },
        || {
            let d = (b.z() - a.z()).conj() * (c.z() - a.z());
            d.im().sign_real()
        },
    )
}

/// Sign of the dot product `(b - a)·(d - c)`.
pub fn dot_sign(a: &Point, b: &Point, c: &Point, d: &Point) -> i8 {
    filtered(
        || {
            let (ax, ay) = a.enclosure();
            let (bx, by) = b.enclosure();
            let (cx, cy) = c.enclosure();
            let (dx, dy) = d.enclosure();
            (bx - ax) * (dx - cx) + (by - ay) * (dy - cy)
        },
        || {
            let p = (b.z() - a.z()).conj() * (d.z() - c.z());
            p.re().sign_real()
        },
    )
}

/// Sign of `b.y - a.y`.
pub fn cmp_y(a: &Point, b: &Point) -> i8 {
    filtered(
        || b.enclosure().1 - a.enclosure().1,
        || (b.z() - a.z()).im().sign_real(),
    )
}

/// Sign of `b.x - a.x`.
pub fn cmp_x(a: &Point, b: &Point) -> i8 {
    filtered(
        || b.enclosure().0 - a.enclosure().0,
        || (b.z() - a.z()).re().sign_real(),
    )
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if p == a || p == b {
        return true;
    }
    orient(a, b, p) == 0 && dot_sign(a, p, p, b) > 0
}

/// Whether the closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if !boxes_overlap(a, b, c, d) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d))
}

/// Whether the open segments `ab` and `cd` cross at a single interior point of both.
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if !boxes_overlap(a, b, c, d) {
        return false;
    }
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

fn boxes_overlap(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (ax, ay) = a.enclosure();
    let (bx, by) = b.enclosure();
    let (cx, cy) = c.enclosure();
    let (dx, dy) = d.enclosure();
    ax.hull(bx).overlaps(&cx.hull(dx)) && ay.hull(by).overlaps(&cy.hull(dy))
}

/// Location of `p` relative to a closed polygon: 1 inside, 0 on the boundary, -1 outside.
pub fn point_in_polygon(p: &Point, poly: &[Point]) -> i8 {
    let mut winding = 0i32;
    let n = poly.len();
    for i in 0..n {
        let u = &poly[i];
        let v = &poly[(i + 1) % n];
        if on_segment(p, u, v) {
            return 0;
        }
        if cmp_y(p, u) <= 0 {
            if cmp_y(p, v) > 0 && orient(u, v, p) > 0 {
                winding += 1;
            }
        } else if cmp_y(p, v) <= 0 && orient(u, v, p) < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        1
    } else {
        -1
    }
}
