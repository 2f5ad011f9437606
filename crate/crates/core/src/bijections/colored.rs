//! Colored compositions and parity-alternating compositions.
//!
//! A type A composition has only odd parts `≥ 3`, each part `i` carrying a
//! color in `1..=(i-1)/2`. A type B composition is an uncolored positive
//! lead part followed by a type A composition. `R(n)` holds two copies of
//! every type A composition of `n` and one copy of every type B composition
//! of `n`; `R(0)` is the empty composition alone.
//!
//! [`phi`] splits each colored part into an odd and an even part, giving a
//! bijection from `R(n)` onto compositions of `n` without parity
//! successions. [`prop2_forward`] is a bijection
//! `R(n-2) ∪ R(n-3) → R'(n) ∪ R(n-4)`, where `R'(n)` collects the elements
//! whose first colored part is maximal (type A) or whose lead is 1 or 2
//! (type B). Raising the first part by 2 maps `R(n-2)` onto the rest of
//! `R(n)`, which yields `a(n) = 2a(n-2) + a(n-3) - a(n-4)`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{Counterexample, TraceLine};
use crate::composition::{
    compositions_without_successions, succession_count, Composition, SuccessionParams,
};
use crate::error::{Error, Result};

/// An odd part `≥ 3` with a color in `1..=(size-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPart {
    size: u32,
    color: u32,
}

impl ColoredPart {
    pub fn new(size: u32, color: u32) -> Result<Self> {
        if size < 3 || size % 2 == 0 || color == 0 || color > (size - 1) / 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "no colored part {size}^{color}"
            )));
        }
        Ok(Self { size, color })
    }

    /// The part carrying the largest color its size allows.
    pub fn maximal(size: u32) -> Result<Self> {
        Self::new(size, size.saturating_sub(1) / 2)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn is_maximal(&self) -> bool {
        self.color == (self.size - 1) / 2
    }

    /// `(odd, even)` pieces: `size - 2·color` and `2·color`.
    fn pieces(&self) -> (u32, u32) {
        (self.size - 2 * self.color, 2 * self.color)
    }

    fn resized(&self, size: u32) -> Result<Self> {
        Self::new(size, self.color)
    }
}

impl fmt::Display for ColoredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.size, self.color)
    }
}

impl FromStr for ColoredPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(alloc::format!("expected SIZE^COLOR, got {s:?}"));
        let (size, color) = s.trim().split_once('^').ok_or_else(bad)?;
        Self::new(
            size.parse().map_err(|_| bad())?,
            color.parse().map_err(|_| bad())?,
        )
    }
}

/// Which of the two copies of a type A composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyIndex {
    /// Split parts odd piece first.
    First,
    /// Split parts even piece first.
    Second,
}

/// Type A when `lead` is `None`, type B otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColoredComposition {
    lead: Option<u32>,
    parts: Vec<ColoredPart>,
}

impl ColoredComposition {
    pub fn type_a(parts: Vec<ColoredPart>) -> Self {
        Self { lead: None, parts }
    }

    pub fn type_b(lead: u32, parts: Vec<ColoredPart>) -> Result<Self> {
        if lead == 0 {
            return Err(Error::InvalidArgument("the lead part must be positive".into()));
        }
        Ok(Self { lead: Some(lead), parts })
    }

    pub fn is_type_a(&self) -> bool {
        self.lead.is_none()
    }

    pub fn lead(&self) -> Option<u32> {
        self.lead
    }

    pub fn parts(&self) -> &[ColoredPart] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.lead.unwrap_or(0) as usize + self.parts.iter().map(|p| p.size as usize).sum::<usize>()
    }
}

/// An element of `R(n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RElement {
    Empty,
    /// A nonempty type A composition with a copy index.
    S { parts: Vec<ColoredPart>, copy: CopyIndex },
    /// A type B composition.
    T { lead: u32, parts: Vec<ColoredPart> },
}

impl RElement {
    pub fn size(&self) -> usize {
        self.as_colored().size()
    }

    /// The underlying colored composition, without the copy index.
    pub fn as_colored(&self) -> ColoredComposition {
        match self {
            RElement::Empty => ColoredComposition::default(),
            RElement::S { parts, .. } => ColoredComposition::type_a(parts.clone()),
            RElement::T { lead, parts } => ColoredComposition {
                lead: Some(*lead),
                parts: parts.clone(),
            },
        }
    }

    /// Membership in `R'(n)` for `n = self.size()`.
    pub fn is_distinguished(&self) -> bool {
        match self {
            RElement::Empty => false,
            RElement::S { parts, .. } => parts[0].is_maximal(),
            RElement::T { lead, parts } => *lead <= 2 && !parts.is_empty(),
        }
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[ColoredPart]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

/// `()`, `A1[5^2,3^1]`, `A2[3^1]`, `B[4]` or `B[4;3^1]`.
impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RElement::Empty => f.write_str("()"),
            RElement::S { parts, copy } => {
                let tag = match copy {
                    CopyIndex::First => "A1",
                    CopyIndex::Second => "A2",
                };
                write!(f, "{tag}[")?;
                write_parts(f, parts)?;
                f.write_str("]")
            }
            RElement::T { lead, parts } => {
                write!(f, "B[{lead}")?;
                if !parts.is_empty() {
                    f.write_str(";")?;
                    write_parts(f, parts)?;
                }
                f.write_str("]")
            }
        }
    }
}

fn parse_parts(s: &str) -> Result<Vec<ColoredPart>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

impl FromStr for RElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" {
            return Ok(RElement::Empty);
        }
        let bad = || Error::Parse(alloc::format!("not a colored composition: {s:?}"));
        let open = s.find('[').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        match &s[..open] {
            tag @ ("A1" | "A2") => {
                let parts = parse_parts(body)?;
                if parts.is_empty() {
                    return Err(bad());
                }
                let copy = if tag == "A1" { CopyIndex::First } else { CopyIndex::Second };
                Ok(RElement::S { parts, copy })
            }
            "B" => {
                let (lead, rest) = body.split_once(';').unwrap_or((body, ""));
                let lead: u32 = lead.trim().parse().map_err(|_| bad())?;
                if lead == 0 {
                    return Err(bad());
                }
                Ok(RElement::T { lead, parts: parse_parts(rest)? })
            }
            _ => Err(bad()),
        }
    }
}

/// All type A compositions of `n`, the empty one included when `n = 0`.
pub fn enumerate_type_a(n: usize) -> Vec<Vec<ColoredPart>> {
    fn extend(remaining: u32, prefix: &mut Vec<ColoredPart>, out: &mut Vec<Vec<ColoredPart>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for size in (3..=remaining).step_by(2) {
            for color in 1..=(size - 1) / 2 {
                prefix.push(ColoredPart { size, color });
                extend(remaining - size, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n as u32, &mut Vec::new(), &mut out);
    out
}

/// Every element of `R(n)`: both copies of each type A composition, then
/// the type B compositions by increasing lead.
pub fn enumerate_r(n: usize) -> Vec<RElement> {
    if n == 0 {
        return vec![RElement::Empty];
    }
    let mut out = Vec::new();
    for parts in enumerate_type_a(n) {
        for copy in [CopyIndex::First, CopyIndex::Second] {
            out.push(RElement::S { parts: parts.clone(), copy });
        }
    }
    for lead in 1..=n {
        for parts in enumerate_type_a(n - lead) {
            out.push(RElement::T { lead: lead as u32, parts });
        }
    }
    out
}

fn push_split(out: &mut Vec<u32>, part: &ColoredPart, odd_first: bool) {
    let (odd, even) = part.pieces();
    if odd_first {
        out.extend([odd, even]);
    } else {
        out.extend([even, odd]);
    }
}

/// Splits every colored part of size `i` and color `k` into `i - 2k` and
/// `2k`. The first copy puts the odd piece first and the second the even
/// piece; after a type B lead, the order is chosen so the lead's parity
/// starts the alternation.
pub fn phi(elem: &RElement) -> Composition {
    let mut out = Vec::new();
    match elem {
        RElement::Empty => {}
        RElement::S { parts, copy } => {
            for p in parts {
                push_split(&mut out, p, *copy == CopyIndex::First);
            }
        }
        RElement::T { lead, parts } => {
            out.push(*lead);
            let odd_first = lead % 2 == 0;
            for p in parts {
                push_split(&mut out, p, odd_first);
            }
        }
    }
    Composition::from_parts_unchecked(out)
}

/// Inverse of [`phi`] on compositions without parity successions.
pub fn phi_inverse(pi: &Composition) -> Result<RElement> {
    if succession_count(pi, &SuccessionParams::parity()) != 0 {
        return Err(Error::OutsideDomain(alloc::format!(
            "{pi} has a parity succession"
        )));
    }
    let parts = pi.parts();
    if parts.is_empty() {
        return Ok(RElement::Empty);
    }
    let (lead, pairs) = if parts.len() % 2 == 1 {
        (Some(parts[0]), &parts[1..])
    } else {
        (None, parts)
    };
    let colored = pairs
        .chunks(2)
        .map(|w| {
            let even = if w[0] % 2 == 0 { w[0] } else { w[1] };
            ColoredPart::new(w[0] + w[1], even / 2)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match lead {
        Some(lead) => RElement::T { lead, parts: colored },
        None => RElement::S {
            copy: if parts[0] % 2 == 1 { CopyIndex::First } else { CopyIndex::Second },
            parts: colored,
        },
    })
}

/// The eight component maps of [`prop2_forward`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop2Case {
    /// `S(n-2)`, maximal first part `i^k` becomes `(i+2)^(k+1)`.
    SGrow,
    /// `S(n-2)`, non-maximal first part `i^k` becomes `(i-2)^k`.
    SShrink,
    /// `S(n-3)`, prepend `3^1`.
    SPrepend,
    /// `T(n-2)` with lead 1, second part grows by 2.
    TBump,
    /// `T(n-3)` with lead 1, lead becomes 2 and second part grows by 2.
    TLeadTwo,
    /// `T(n-2)` with odd lead `i ≥ 3`, becomes lead 2 followed by maximal `i`.
    TPrependTwo,
    /// `T(n-2)` with even lead `i`, becomes lead 1 followed by maximal `i+1`.
    TPrependOne,
    /// `T(n-3)` with lead `i ≥ 2`, lead becomes `i-1`.
    TShrink,
}

impl Prop2Case {
    pub const ALL: [Prop2Case; 8] = [
        Prop2Case::SGrow,
        Prop2Case::SShrink,
        Prop2Case::SPrepend,
        Prop2Case::TBump,
        Prop2Case::TLeadTwo,
        Prop2Case::TPrependTwo,
        Prop2Case::TPrependOne,
        Prop2Case::TShrink,
    ];
}

impl fmt::Display for Prop2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prop2Case::SGrow => "s-grow",
            Prop2Case::SShrink => "s-shrink",
            Prop2Case::SPrepend => "s-prepend",
            Prop2Case::TBump => "t-bump",
            Prop2Case::TLeadTwo => "t-lead-two",
            Prop2Case::TPrependTwo => "t-prepend-two",
            Prop2Case::TPrependOne => "t-prepend-one",
            Prop2Case::TShrink => "t-shrink",
        })
    }
}

impl FromStr for Prop2Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Prop2Case::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown case id {s:?}")))
    }
}

fn require_n(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::InvalidArgument(alloc::format!(
            "the recurrence bijection needs n >= 5, got {n}"
        )));
    }
    Ok(())
}

fn outside(elem: &RElement, n: usize) -> Error {
    Error::OutsideDomain(alloc::format!("{elem} is outside the domain for n = {n}"))
}

fn with_first(parts: &[ColoredPart], first: ColoredPart) -> Vec<ColoredPart> {
    let mut v = parts.to_vec();
    v[0] = first;
    v
}

fn with_prefix(first: ColoredPart, parts: &[ColoredPart]) -> Vec<ColoredPart> {
    let mut v = Vec::with_capacity(parts.len() + 1);
    v.push(first);
    v.extend_from_slice(parts);
    v
}

/// Maps `R(n-2) ∪ R(n-3)` onto `R'(n) ∪ R(n-4)` for `n ≥ 5`.
pub fn prop2_forward(n: usize, elem: &RElement) -> Result<(Prop2Case, RElement)> {
    require_n(n)?;
    let size = elem.size();
    let out = match elem {
        RElement::S { parts, copy } if size == n - 2 => {
            let first = parts[0];
            if first.is_maximal() {
                let grown = ColoredPart::new(first.size + 2, first.color + 1)?;
                (Prop2Case::SGrow, RElement::S { parts: with_first(parts, grown), copy: *copy })
            } else {
                let shrunk = first.resized(first.size - 2)?;
                (Prop2Case::SShrink, RElement::S { parts: with_first(parts, shrunk), copy: *copy })
            }
        }
        RElement::S { parts, copy } if size == n - 3 => (
            Prop2Case::SPrepend,
            RElement::S {
                parts: with_prefix(ColoredPart { size: 3, color: 1 }, parts),
                copy: *copy,
            },
        ),
        RElement::T { lead: 1, parts } if size == n - 2 || size == n - 3 => {
            let second = parts.first().ok_or_else(|| outside(elem, n))?;
            let parts = with_first(parts, second.resized(second.size + 2)?);
            if size == n - 2 {
                (Prop2Case::TBump, RElement::T { lead: 1, parts })
            } else {
                (Prop2Case::TLeadTwo, RElement::T { lead: 2, parts })
            }
        }
        RElement::T { lead, parts } if size == n - 2 => {
            if lead % 2 == 1 {
                let moved = ColoredPart::maximal(*lead)?;
                (Prop2Case::TPrependTwo, RElement::T { lead: 2, parts: with_prefix(moved, parts) })
            } else {
                let moved = ColoredPart::maximal(lead + 1)?;
                (Prop2Case::TPrependOne, RElement::T { lead: 1, parts: with_prefix(moved, parts) })
            }
        }
        RElement::T { lead, parts } if size == n - 3 => (
            Prop2Case::TShrink,
            RElement::T { lead: lead - 1, parts: parts.clone() },
        ),
        _ => return Err(outside(elem, n)),
    };
    Ok(out)
}

/// Inverse of [`prop2_forward`] on `R'(n) ∪ R(n-4)`.
pub fn prop2_inverse(n: usize, elem: &RElement) -> Result<(Prop2Case, RElement)> {
    require_n(n)?;
    let size = elem.size();
    let out = match elem {
        RElement::S { parts, copy } if size == n && parts[0].is_maximal() => {
            let first = parts[0];
            if first.size == 3 {
                (Prop2Case::SPrepend, RElement::S { parts: parts[1..].to_vec(), copy: *copy })
            } else {
                let shrunk = ColoredPart::new(first.size - 2, first.color - 1)?;
                (Prop2Case::SGrow, RElement::S { parts: with_first(parts, shrunk), copy: *copy })
            }
        }
        RElement::T { lead: lead @ (1 | 2), parts } if size == n && !parts.is_empty() => {
            let second = parts[0];
            match (lead, second.is_maximal()) {
                (1, false) => (
                    Prop2Case::TBump,
                    RElement::T { lead: 1, parts: with_first(parts, second.resized(second.size - 2)?) },
                ),
                (_, false) => (
                    Prop2Case::TLeadTwo,
                    RElement::T { lead: 1, parts: with_first(parts, second.resized(second.size - 2)?) },
                ),
                (2, true) => (
                    Prop2Case::TPrependTwo,
                    RElement::T { lead: second.size, parts: parts[1..].to_vec() },
                ),
                (_, true) => (
                    Prop2Case::TPrependOne,
                    RElement::T { lead: second.size - 1, parts: parts[1..].to_vec() },
                ),
            }
        }
        RElement::S { parts, copy } if size + 4 == n => {
            let grown = parts[0].resized(parts[0].size + 2)?;
            (Prop2Case::SShrink, RElement::S { parts: with_first(parts, grown), copy: *copy })
        }
        RElement::T { lead, parts } if size + 4 == n => (
            Prop2Case::TShrink,
            RElement::T { lead: lead + 1, parts: parts.clone() },
        ),
        _ => return Err(outside(elem, n)),
    };
    Ok(out)
}

/// Adds 2 to the first part (the lead for type B, keeping colors), a
/// bijection from `R(n-2)` onto `R(n) \ R'(n)` for `n ≥ 3`.
pub fn lengthen_first(elem: &RElement) -> Result<RElement> {
    match elem {
        RElement::Empty => Err(Error::OutsideDomain("the empty composition has no first part".into())),
        RElement::S { parts, copy } => Ok(RElement::S {
            parts: with_first(parts, parts[0].resized(parts[0].size + 2)?),
            copy: *copy,
        }),
        RElement::T { lead, parts } => Ok(RElement::T { lead: lead + 2, parts: parts.clone() }),
    }
}

/// Counts from one size of the [`phi`] audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiAudit {
    pub n: usize,
    pub colored: usize,
    pub alternating: usize,
}

/// Checks for each `n ≤ n_max` that [`phi`] sends `R(n)` injectively into
/// parity-alternating compositions of `n`, onto all of them, with
/// [`phi_inverse`] undoing it.
pub fn audit_phi(n_max: usize) -> core::result::Result<Vec<PhiAudit>, Counterexample> {
    audit_phi_with(n_max, &phi)
}

/// As [`audit_phi`], with the map supplied by the caller.
pub fn audit_phi_with(
    n_max: usize,
    map: &dyn Fn(&RElement) -> Composition,
) -> core::result::Result<Vec<PhiAudit>, Counterexample> {
    let params = SuccessionParams::parity();
    let mut out = Vec::new();
    for n in 0..=n_max {
        let fail = |element: String, reason: String| Counterexample {
            context: alloc::format!("phi n={n}"),
            element,
            reason,
        };
        let domain = enumerate_r(n);
        let mut images = BTreeSet::new();
        for elem in &domain {
            let pi = map(elem);
            if pi.size() != n || succession_count(&pi, &params) != 0 {
                return Err(fail(elem.to_string(), alloc::format!("image {pi} is not alternating of size {n}")));
            }
            let parity_ok = match elem {
                RElement::Empty => true,
                RElement::S { .. } => pi.len() % 2 == 0,
                RElement::T { .. } => pi.len() % 2 == 1,
            };
            if !parity_ok {
                return Err(fail(elem.to_string(), alloc::format!("image {pi} has the wrong length parity")));
            }
            if phi_inverse(&pi).ok().as_ref() != Some(elem) {
                return Err(fail(elem.to_string(), "inverse does not recover the element".into()));
            }
            if !images.insert(pi.clone()) {
                return Err(fail(elem.to_string(), alloc::format!("image {pi} is hit twice")));
            }
        }
        let alternating = compositions_without_successions(n, &params);
        if alternating.len() != domain.len() {
            return Err(fail(
                String::new(),
                alloc::format!("{} colored elements, {} alternating compositions", domain.len(), alternating.len()),
            ));
        }
        out.push(PhiAudit {
            n,
            colored: domain.len(),
            alternating: alternating.len(),
        });
    }
    Ok(out)
}

/// Counts from one size of the recurrence-bijection audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop2Audit {
    pub n: usize,
    pub domain_size: usize,
    pub codomain_size: usize,
    /// Size of `R'(n)`; equals `|R(n)| - |R(n-2)|`.
    pub distinguished: usize,
    pub per_case: [usize; 8],
}

/// Forward map used by an audit; [`prop2_forward`] in normal use.
pub type Prop2Fn<'a> = &'a dyn Fn(usize, &RElement) -> Result<(Prop2Case, RElement)>;

/// Audits [`prop2_forward`] for `5 ≤ n ≤ n_max`.
pub fn audit_prop2(n_max: usize) -> core::result::Result<Vec<Prop2Audit>, Counterexample> {
    audit_prop2_with(n_max, &prop2_forward)
}

/// As [`audit_prop2`], with the forward map supplied by the caller. Also
/// checks that [`lengthen_first`] maps `R(n-2)` bijectively onto
/// `R(n) \ R'(n)`.
pub fn audit_prop2_with(
    n_max: usize,
    forward: Prop2Fn<'_>,
) -> core::result::Result<Vec<Prop2Audit>, Counterexample> {
    let r: Vec<Vec<RElement>> = (0..=n_max).map(enumerate_r).collect();
    let mut out = Vec::new();
    for n in 5..=n_max {
        let fail = |element: String, reason: String| Counterexample {
            context: alloc::format!("prop2 n={n}"),
            element,
            reason,
        };
        let distinguished: BTreeSet<&RElement> =
            r[n].iter().filter(|e| e.is_distinguished()).collect();
        let shorter: BTreeSet<&RElement> = r[n - 4].iter().collect();
        let mut per_case = [0; 8];
        let mut images = BTreeSet::new();
        let domain = r[n - 2].iter().chain(&r[n - 3]);
        for elem in domain {
            let (case, image) = forward(n, elem).map_err(|e| fail(elem.to_string(), e.to_string()))?;
            if !distinguished.contains(&image) && !shorter.contains(&image) {
                return Err(fail(elem.to_string(), alloc::format!("image {image} lies outside the codomain")));
            }
            match prop2_inverse(n, &image) {
                Ok((c, back)) if c == case && back == *elem => {}
                _ => return Err(fail(elem.to_string(), alloc::format!("image {image} does not invert"))),
            }
            if !images.insert(image.clone()) {
                return Err(fail(elem.to_string(), alloc::format!("image {image} is hit twice")));
            }
            per_case[Prop2Case::ALL.iter().position(|c| *c == case).unwrap_or(0)] += 1;
        }
        let domain_size = r[n - 2].len() + r[n - 3].len();
        let codomain_size = distinguished.len() + shorter.len();
        if domain_size != codomain_size {
            return Err(fail(
                String::new(),
                alloc::format!("domain has {domain_size} elements, codomain {codomain_size}"),
            ));
        }
        let mut rest = BTreeSet::new();
        for elem in &r[n - 2] {
            let longer = lengthen_first(elem).map_err(|e| fail(elem.to_string(), e.to_string()))?;
            if longer.size() != n || longer.is_distinguished() || !rest.insert(longer.clone()) {
                return Err(fail(elem.to_string(), alloc::format!("lengthening gives {longer}")));
            }
        }
        if rest.len() + distinguished.len() != r[n].len() {
            return Err(fail(String::new(), "lengthening misses part of the complement".into()));
        }
        out.push(Prop2Audit {
            n,
            domain_size,
            codomain_size,
            distinguished: distinguished.len(),
            per_case,
        });
    }
    Ok(out)
}

/// Trace of [`prop2_forward`] over `R(n-2) ∪ R(n-3)`.
pub fn prop2_trace(n: usize) -> Result<Vec<TraceLine>> {
    require_n(n)?;
    enumerate_r(n - 2)
        .iter()
        .chain(&enumerate_r(n - 3))
        .map(|elem| {
            let (case, image) = prop2_forward(n, elem)?;
            Ok(TraceLine {
                domain: elem.to_string(),
                case: case.to_string(),
                image: image.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::a_seq;

    fn part(size: u32, color: u32) -> ColoredPart {
        ColoredPart::new(size, color).unwrap()
    }

    #[test]
    fn colored_part_bounds() {
        assert!(ColoredPart::new(3, 1).is_ok());
        assert!(ColoredPart::new(3, 2).is_err());
        assert!(ColoredPart::new(4, 1).is_err());
        assert!(ColoredPart::new(1, 0).is_err());
        assert!(ColoredPart::maximal(7).unwrap().is_maximal());
        assert!(!part(7, 2).is_maximal());
    }

    #[test]
    fn sizes_of_r_match_sequence() {
        for n in 0..=14 {
            assert_eq!(enumerate_r(n).len() as u64, u64::try_from(a_seq(n)).unwrap(), "n={n}");
        }
    }

    #[test]
    fn phi_examples() {
        let first = RElement::S { parts: vec![part(5, 1), part(3, 1)], copy: CopyIndex::First };
        assert_eq!(phi(&first).parts(), &[3, 2, 1, 2]);
        let second = RElement::S { parts: vec![part(5, 2)], copy: CopyIndex::Second };
        assert_eq!(phi(&second).parts(), &[4, 1]);
        let odd_lead = RElement::T { lead: 3, parts: vec![part(5, 1)] };
        assert_eq!(phi(&odd_lead).parts(), &[3, 2, 3]);
        let even_lead = RElement::T { lead: 2, parts: vec![part(5, 1)] };
        assert_eq!(phi(&even_lead).parts(), &[2, 3, 2]);
        assert!(phi(&RElement::Empty).is_empty());
    }

    #[test]
    fn phi_inverse_rejects_successions() {
        assert!(phi_inverse(&Composition::new(vec![1, 3]).unwrap()).is_err());
    }

    #[test]
    fn display_round_trip() {
        for n in 0..=9 {
            for elem in enumerate_r(n) {
                assert_eq!(elem.to_string().parse::<RElement>().unwrap(), elem);
            }
        }
        assert!("A1[]".parse::<RElement>().is_err());
        assert!("B[0]".parse::<RElement>().is_err());
        assert!("A1[3^2]".parse::<RElement>().is_err());
    }

    #[test]
    fn prop2_examples() {
        let grow = RElement::S { parts: vec![part(3, 1)], copy: CopyIndex::First };
        let (case, image) = prop2_forward(5, &grow).unwrap();
        assert_eq!(case, Prop2Case::SGrow);
        assert_eq!(image, RElement::S { parts: vec![part(5, 2)], copy: CopyIndex::First });

        let even = RElement::T { lead: 4, parts: vec![] };
        let (case, image) = prop2_forward(6, &even).unwrap();
        assert_eq!(case, Prop2Case::TPrependOne);
        assert_eq!(image, RElement::T { lead: 1, parts: vec![part(5, 2)] });

        let shrink = RElement::T { lead: 3, parts: vec![] };
        let (case, image) = prop2_forward(6, &shrink).unwrap();
        assert_eq!((case, image), (Prop2Case::TShrink, RElement::T { lead: 2, parts: vec![] }));
    }

    #[test]
    fn prop2_small_sizes() {
        assert!(prop2_forward(4, &RElement::T { lead: 2, parts: vec![] }).is_err());
        // n = 4 directly: |R(2)| + |R(1)| = |R'(4)| + |R(0)|.
        let distinguished = enumerate_r(4).iter().filter(|e| e.is_distinguished()).count();
        assert_eq!(enumerate_r(2).len() + enumerate_r(1).len(), distinguished + enumerate_r(0).len());
    }

    #[test]
    fn audits_pass_small() {
        assert_eq!(audit_phi(10).unwrap().len(), 11);
        let audits = audit_prop2(11).unwrap();
        for a in &audits {
            assert_eq!(a.domain_size, a.codomain_size);
            assert_eq!(a.per_case.iter().sum::<usize>(), a.domain_size);
        }
    }
}
