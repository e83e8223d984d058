//! Tweedle and notch gadgets. Lengths live in `Q(ζ_32)`; a gadget spans exactly 4 units
//! along its side and leaves the heading unchanged.

use super::{Instruction, PrototileError};
use crate::exactnum::{CycloNum, PiRational};

pub const GADGET_ORDER: u32 = 32;

fn pi(n: i64, d: i64) -> PiRational {
    PiRational::new(n, d)
}

fn cos_at(a: PiRational) -> CycloNum {
    CycloNum::cos_of(a, GADGET_ORDER).expect("angle lies in the gadget field")
}

fn sin_at(a: PiRational) -> CycloNum {
    CycloNum::sin_of(a, GADGET_ORDER).expect("angle lies in the gadget field")
}

pub fn cos_eps() -> CycloNum {
    cos_at(pi(1, 16))
}

pub fn sin_eps() -> CycloNum {
    sin_at(pi(1, 16))
}

pub fn cos_two_eps() -> CycloNum {
    cos_at(pi(1, 8))
}

pub fn sin_two_eps() -> CycloNum {
    sin_at(pi(1, 8))
}

/// First and last edge of every gadget: `2 - cos ε + sin 2ε`.
pub fn flank_len() -> CycloNum {
    CycloNum::from_int(GADGET_ORDER, 2) - cos_eps() + sin_two_eps()
}

/// Middle edge of a tweedle: `2(cos 2ε + sin ε)`.
pub fn mid_len() -> CycloNum {
    (cos_two_eps() + sin_eps()).scale_int(2)
}

fn from_headings(lens: Vec<CycloNum>, headings: &[PiRational]) -> Vec<Instruction> {
    let k = headings.len();
    (0..k)
        .map(|i| {
            let next = if i + 1 < k { headings[i + 1] } else { PiRational::ZERO };
            Instruction { len: lens[i].clone(), turn: next - headings[i] }
        })
        .collect()
}

/// The seven-edge zig-zag for one bit, relative to the side direction. Bit 0 first
/// dips to the right of the side; bit 1 is its mirror image across the side line.
pub fn tweedle_path(bit: bool) -> Vec<Instruction> {
    let one = CycloNum::one(GADGET_ORDER);
    let lens = vec![flank_len(), one.clone(), one.clone(), mid_len(), one.clone(), one, flank_len()];
    let mut headings = [pi(0, 1), pi(-5, 8), pi(-1, 16), pi(1, 2), pi(-1, 16), pi(-5, 8), pi(0, 1)];
    if bit {
        for h in &mut headings {
            *h = -*h;
        }
    }
    from_headings(lens, &headings)
}

/// The six-edge notch, turning left into the polygon first.
pub fn notch_path() -> Vec<Instruction> {
    let one = CycloNum::one(GADGET_ORDER);
    let lens = vec![flank_len(), one.clone(), one.clone(), one.clone(), one, flank_len()];
    let headings = [pi(0, 1), pi(5, 8), pi(1, 16), pi(-1, 16), pi(-5, 8), pi(0, 1)];
    from_headings(lens, &headings)
}

/// Points visited by a path, starting with `start`.
pub fn trace(start: &CycloNum, heading: PiRational, path: &[Instruction]) -> Result<Vec<CycloNum>, PrototileError> {
    let order = start.order();
    let mut pts = vec![start.clone()];
    let mut h = heading;
    for ins in path {
        let step = ins.len.promote(order)?.rotate(h)?;
        let next = pts.last().expect("nonempty") + &step;
        pts.push(next);
        h += ins.turn;
    }
    Ok(pts)
}
