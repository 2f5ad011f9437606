//! The bijection
//!
//! ```text
//! B(n,d,a) ∪ C(n-3,d-2,a-2)  →  B(n-1,d-1,a-1) ∪ B(n-2,d,a) ∪ B(n-2,d-1,a-1) ∪ C(n-3,d-2,a)
//! ```
//!
//! where `C(n,d,a)` is the set of compositions of `n` with `d` parts and `a`
//! parity successions and `B(n,d,a)` its members ending in a part 1 or 2.
//! Counting both sides gives the eight-term recurrence checked in
//! [`crate::closed_forms::theorem2_check`].
//!
//! Below, `x` is an odd part, `y` an even part and `z` a part `≥ 3`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{Counterexample, TraceLine};
use crate::composition::{enumerate_compositions, succession_count, Composition, SuccessionParams};
use crate::error::{Error, Result};

/// Classes of `B(n,d,a)`, decided by the final parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BClass {
    /// Ends in `1+1` or `x+1+2`.
    One,
    /// Ends in `y+2+1` or `2+2`.
    Two,
    /// Ends in `x+2+1` or `y+1+2`.
    Three,
    /// Ends in `z+1` or `z+2`.
    Four,
}

impl BClass {
    pub fn index(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
        }
    }
}

fn is_odd(p: u32) -> bool {
    p % 2 == 1
}

/// The class of a composition ending in 1 or 2; `None` when the last part
/// is at least 3 (or the composition is empty).
///
/// Two-part compositions treat the missing third-to-last part as even, so
/// `(2,1)` is class 2 and `(1,2)` class 3. The one-part compositions `(1)`
/// and `(2)` are put in class 4.
pub fn classify_b(pi: &Composition) -> Option<BClass> {
    let parts = pi.parts();
    let (&last, init) = parts.split_last()?;
    if last > 2 {
        return None;
    }
    let Some((&pen, init)) = init.split_last() else {
        return Some(BClass::Four);
    };
    let ante_odd = init.last().is_some_and(|&p| is_odd(p));
    Some(match (last, pen) {
        (_, p) if p >= 3 => BClass::Four,
        (1, 1) => BClass::One,
        (1, _) if ante_odd => BClass::Three,
        (1, _) => BClass::Two,
        (_, 2) => BClass::Two,
        _ if ante_odd => BClass::One,
        _ => BClass::Three,
    })
}

/// The five component maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// Class 1: remove the right-most 1.
    I,
    /// Class 2: remove the right-most 2.
    II,
    /// Class 3: remove the final two parts.
    III,
    /// Class 4: subtract 2 from the penultimate part.
    IV,
    /// `C(n-3,d-2,a-2)`: append 1 after an odd last part, 2 after an even one.
    V,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::I, Case::II, Case::III, Case::IV, Case::V];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
            Case::V => "v",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown case id {s:?}")))
    }
}

/// The index `(n, d, a)` of one instance of the bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub n: usize,
    pub d: usize,
    pub a: usize,
}

impl Cell {
    /// Needs `n ≥ 4` and `d ≥ 3`.
    pub fn new(n: usize, d: usize, a: usize) -> Result<Self> {
        if n < 4 || d < 3 {
            return Err(Error::InvalidArgument(alloc::format!(
                "the bijection is defined for n >= 4, d >= 3; got n = {n}, d = {d}"
            )));
        }
        Ok(Self { n, d, a })
    }

    fn offset(&self, dn: usize, dd: usize, da: usize) -> Option<(usize, usize, usize)> {
        Some((
            self.n.checked_sub(dn)?,
            self.d.checked_sub(dd)?,
            self.a.checked_sub(da)?,
        ))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} a={}", self.n, self.d, self.a)
    }
}

/// An element of `B(n,d,a) ∪ C(n-3,d-2,a-2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    B(Composition),
    C(Composition),
}

/// An element of `B(n-1,d-1,a-1) ∪ B(n-2,d,a) ∪ B(n-2,d-1,a-1) ∪ C(n-3,d-2,a)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Image {
    /// In `B(n-1,d-1,a-1)`.
    DropOne(Composition),
    /// In `B(n-2,d,a)`.
    SameParts(Composition),
    /// In `B(n-2,d-1,a-1)`.
    DropTwo(Composition),
    /// In `C(n-3,d-2,a)`.
    Tail(Composition),
}

const DOMAIN_B: &str = "B(n,d,a)";
const DOMAIN_C: &str = "C(n-3,d-2,a-2)";
const IMAGE_DROP_ONE: &str = "B(n-1,d-1,a-1)";
const IMAGE_SAME: &str = "B(n-2,d,a)";
const IMAGE_DROP_TWO: &str = "B(n-2,d-1,a-1)";
const IMAGE_TAIL: &str = "C(n-3,d-2,a)";

fn split_token(s: &str) -> Result<(&str, Composition)> {
    let (label, comp) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(alloc::format!("expected LABEL:(parts), got {s:?}")))?;
    Ok((label, comp.parse()?))
}

impl Domain {
    pub fn composition(&self) -> &Composition {
        match self {
            Domain::B(c) | Domain::C(c) => c,
        }
    }

    /// Membership in the domain of `cell`.
    pub fn belongs_to(&self, cell: Cell) -> bool {
        match self {
            Domain::B(pi) => in_b(pi, Some((cell.n, cell.d, cell.a))),
            Domain::C(pi) => in_c(pi, cell.offset(3, 2, 2)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::B(c) => write!(f, "{DOMAIN_B}:{c}"),
            Domain::C(c) => write!(f, "{DOMAIN_C}:{c}"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match split_token(s)? {
            (DOMAIN_B, c) => Ok(Domain::B(c)),
            (DOMAIN_C, c) => Ok(Domain::C(c)),
            (label, _) => Err(Error::Parse(alloc::format!("unknown domain label {label:?}"))),
        }
    }
}

impl Image {
    pub fn composition(&self) -> &Composition {
        match self {
            Image::DropOne(c) | Image::SameParts(c) | Image::DropTwo(c) | Image::Tail(c) => c,
        }
    }

    /// Membership in the codomain of `cell`.
    pub fn belongs_to(&self, cell: Cell) -> bool {
        match self {
            Image::DropOne(pi) => in_b(pi, cell.offset(1, 1, 1)),
            Image::SameParts(pi) => in_b(pi, cell.offset(2, 0, 0)),
            Image::DropTwo(pi) => in_b(pi, cell.offset(2, 1, 1)),
            Image::Tail(pi) => in_c(pi, cell.offset(3, 2, 0)),
        }
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            Image::DropOne(_) => IMAGE_DROP_ONE,
            Image::SameParts(_) => IMAGE_SAME,
            Image::DropTwo(_) => IMAGE_DROP_TWO,
            Image::Tail(_) => IMAGE_TAIL,
        };
        write!(f, "{label}:{}", self.composition())
    }
}

impl FromStr for Image {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match split_token(s)? {
            (IMAGE_DROP_ONE, c) => Ok(Image::DropOne(c)),
            (IMAGE_SAME, c) => Ok(Image::SameParts(c)),
            (IMAGE_DROP_TWO, c) => Ok(Image::DropTwo(c)),
            (IMAGE_TAIL, c) => Ok(Image::Tail(c)),
            (label, _) => Err(Error::Parse(alloc::format!("unknown image label {label:?}"))),
        }
    }
}

fn in_c(pi: &Composition, index: Option<(usize, usize, usize)>) -> bool {
    index.is_some_and(|(n, d, a)| {
        pi.size() == n && pi.len() == d && succession_count(pi, &SuccessionParams::parity()) == a
    })
}

fn in_b(pi: &Composition, index: Option<(usize, usize, usize)>) -> bool {
    in_c(pi, index) && pi.last().is_some_and(|p| p <= 2)
}

fn outside(what: impl fmt::Display, cell: Cell) -> Error {
    Error::OutsideDomain(alloc::format!("{what} is not in the set it claims for {cell}"))
}

fn with_parts(pi: &Composition, edit: impl FnOnce(&mut Vec<u32>)) -> Composition {
    let mut parts = pi.parts().to_vec();
    edit(&mut parts);
    Composition::from_parts_unchecked(parts)
}

/// Applies the bijection to one element of the domain of `cell`.
pub fn theorem2_forward(cell: Cell, elem: &Domain) -> Result<(Case, Image)> {
    if !elem.belongs_to(cell) {
        return Err(outside(elem, cell));
    }
    let (case, image) = match elem {
        Domain::B(pi) => {
            let k = pi.len();
            match classify_b(pi).ok_or_else(|| outside(elem, cell))? {
                BClass::One => {
                    let at = pi.parts().iter().rposition(|&p| p == 1).unwrap_or(k - 1);
                    (Case::I, Image::DropOne(with_parts(pi, |v| { v.remove(at); })))
                }
                BClass::Two => {
                    let at = pi.parts().iter().rposition(|&p| p == 2).unwrap_or(k - 1);
                    (Case::II, Image::DropTwo(with_parts(pi, |v| { v.remove(at); })))
                }
                BClass::Three => (Case::III, Image::Tail(with_parts(pi, |v| v.truncate(k - 2)))),
                BClass::Four => (
                    Case::IV,
                    Image::SameParts(with_parts(pi, |v| v[k - 2] -= 2)),
                ),
            }
        }
        Domain::C(pi) => {
            if pi.last().is_some_and(is_odd) {
                (Case::V, Image::DropTwo(with_parts(pi, |v| v.push(1))))
            } else {
                (Case::V, Image::DropOne(with_parts(pi, |v| v.push(2))))
            }
        }
    };
    debug_assert!(image.belongs_to(cell));
    Ok((case, image))
}

/// Inverts [`theorem2_forward`] on one element of the codomain of `cell`.
pub fn theorem2_inverse(cell: Cell, image: &Image) -> Result<(Case, Domain)> {
    if !image.belongs_to(cell) {
        return Err(outside(image, cell));
    }
    let pi = image.composition();
    let k = pi.len();
    let parts = pi.parts();
    let last = parts[k - 1];
    let pen = if k >= 2 { parts[k - 2] } else { 0 };
    let out = match image {
        Image::DropOne(_) => {
            if last == 1 {
                (Case::I, Domain::B(with_parts(pi, |v| v.push(1))))
            } else if is_odd(pen) {
                (Case::I, Domain::B(with_parts(pi, |v| v.insert(k - 1, 1))))
            } else {
                (Case::V, Domain::C(with_parts(pi, |v| v.truncate(k - 1))))
            }
        }
        Image::DropTwo(_) => {
            if last == 2 {
                (Case::II, Domain::B(with_parts(pi, |v| v.push(2))))
            } else if is_odd(pen) {
                (Case::V, Domain::C(with_parts(pi, |v| v.truncate(k - 1))))
            } else {
                (Case::II, Domain::B(with_parts(pi, |v| v.insert(k - 1, 2))))
            }
        }
        Image::SameParts(_) => (Case::IV, Domain::B(with_parts(pi, |v| v[k - 2] += 2))),
        Image::Tail(_) => {
            let tail: [u32; 2] = if is_odd(last) { [2, 1] } else { [1, 2] };
            (Case::III, Domain::B(with_parts(pi, |v| v.extend(tail))))
        }
    };
    debug_assert!(out.1.belongs_to(cell));
    Ok(out)
}

/// Compositions of size `<= n_max` grouped by `(size, parts, successions)`.
#[derive(Debug, Clone, Default)]
pub struct ParityBuckets {
    buckets: BTreeMap<(usize, usize, usize), Vec<Composition>>,
}

impl ParityBuckets {
    pub fn build(n_max: usize) -> Result<Self> {
        let params = SuccessionParams::parity();
        let mut buckets: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for n in 0..=n_max {
            for pi in enumerate_compositions(n, None)? {
                let key = (n, pi.len(), succession_count(&pi, &params));
                buckets.entry(key).or_default().push(pi);
            }
        }
        Ok(Self { buckets })
    }

    pub fn c(&self, index: Option<(usize, usize, usize)>) -> &[Composition] {
        index
            .and_then(|key| self.buckets.get(&key))
            .map_or(&[], Vec::as_slice)
    }

    pub fn b(&self, index: Option<(usize, usize, usize)>) -> impl Iterator<Item = &Composition> + '_ {
        self.c(index).iter().filter(|pi| pi.last().is_some_and(|p| p <= 2))
    }
}

/// Every element of the domain of `cell`, B-part first.
pub fn domain_of(buckets: &ParityBuckets, cell: Cell) -> Vec<Domain> {
    let b = buckets.b(Some((cell.n, cell.d, cell.a))).cloned().map(Domain::B);
    let c = buckets.c(cell.offset(3, 2, 2)).iter().cloned().map(Domain::C);
    b.chain(c).collect()
}

/// Every element of the codomain of `cell`.
pub fn codomain_of(buckets: &ParityBuckets, cell: Cell) -> Vec<Image> {
    let mut out: Vec<Image> = buckets.b(cell.offset(1, 1, 1)).cloned().map(Image::DropOne).collect();
    out.extend(buckets.b(cell.offset(2, 0, 0)).cloned().map(Image::SameParts));
    out.extend(buckets.b(cell.offset(2, 1, 1)).cloned().map(Image::DropTwo));
    out.extend(buckets.c(cell.offset(3, 2, 0)).iter().cloned().map(Image::Tail));
    out
}

/// Sizes found while auditing one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAudit {
    pub cell: Cell,
    pub domain_size: usize,
    pub codomain_size: usize,
    /// Elements handled by cases i to v.
    pub per_case: [usize; 5],
}

/// Forward map used by an audit; [`theorem2_forward`] in normal use.
pub type ForwardFn<'a> = &'a dyn Fn(Cell, &Domain) -> Result<(Case, Image)>;

/// Audits every cell with `4 ≤ n ≤ n_max`, `d ≥ 3`, `0 ≤ a < d`.
pub fn audit_theorem2(n_max: usize) -> core::result::Result<Vec<CellAudit>, Counterexample> {
    audit_theorem2_with(n_max, &theorem2_forward)
}

/// As [`audit_theorem2`], with the forward map supplied by the caller.
///
/// For each cell: every image lies in the codomain and is hit once, the
/// domain and codomain have equal size, and the inverse undoes the forward
/// map on both sides.
pub fn audit_theorem2_with(
    n_max: usize,
    forward: ForwardFn<'_>,
) -> core::result::Result<Vec<CellAudit>, Counterexample> {
    let buckets = ParityBuckets::build(n_max).map_err(|e| Counterexample {
        context: "theorem2".into(),
        element: String::new(),
        reason: e.to_string(),
    })?;
    let mut audits = Vec::new();
    for n in 4..=n_max {
        for d in 3..=n {
            for a in 0..d {
                let cell = Cell { n, d, a };
                audits.push(audit_cell(&buckets, cell, forward)?);
            }
        }
    }
    Ok(audits)
}

fn audit_cell(
    buckets: &ParityBuckets,
    cell: Cell,
    forward: ForwardFn<'_>,
) -> core::result::Result<CellAudit, Counterexample> {
    let fail = |element: &dyn fmt::Display, reason: String| Counterexample {
        context: alloc::format!("theorem2 {cell}"),
        element: element.to_string(),
        reason,
    };
    let domain = domain_of(buckets, cell);
    let codomain = codomain_of(buckets, cell);
    let mut per_case = [0; 5];
    let mut seen = BTreeSet::new();
    for elem in &domain {
        let (case, image) = forward(cell, elem).map_err(|e| fail(elem, e.to_string()))?;
        if !image.belongs_to(cell) {
            return Err(fail(elem, alloc::format!("image {image} lies outside the codomain")));
        }
        match theorem2_inverse(cell, &image) {
            Ok((back_case, back)) if back == *elem && back_case == case => {}
            Ok((_, back)) => {
                return Err(fail(elem, alloc::format!("image {image} inverts to {back}")));
            }
            Err(e) => return Err(fail(elem, e.to_string())),
        }
        if !seen.insert(image.clone()) {
            return Err(fail(elem, alloc::format!("image {image} is hit twice")));
        }
        per_case[case.slot()] += 1;
    }
    if domain.len() != codomain.len() {
        return Err(fail(
            &cell,
            alloc::format!("domain has {} elements, codomain {}", domain.len(), codomain.len()),
        ));
    }
    for image in &codomain {
        let (_, back) = theorem2_inverse(cell, image).map_err(|e| fail(image, e.to_string()))?;
        match forward(cell, &back) {
            Ok((_, again)) if again == *image => {}
            _ => return Err(fail(image, "forward does not undo the inverse".into())),
        }
    }
    Ok(CellAudit {
        cell,
        domain_size: domain.len(),
        codomain_size: codomain.len(),
        per_case,
    })
}

/// Trace of the forward map on the whole domain of `cell`.
pub fn theorem2_trace(buckets: &ParityBuckets, cell: Cell) -> Result<Vec<TraceLine>> {
    domain_of(buckets, cell)
        .iter()
        .map(|elem| {
            let (case, image) = theorem2_forward(cell, elem)?;
            Ok(TraceLine {
                domain: elem.to_string(),
                case: case.to_string(),
                image: image.to_string(),
            })
        })
        .collect()
}
