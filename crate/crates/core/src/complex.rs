//! Downward-closed set families and the two moves the recursions are built on.

use std::fmt;

use crate::error::{Error, Result};
use crate::face::{tables, Face, FaceBits, MAX_VERTICES};

/// A downward-closed family of faces over the ground set `{0, .., n-1}`.
///
/// The empty family and the family `{∅}` are distinct values. Only a
/// complex containing the empty face is a valid Chomp position.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complex {
    n: u8,
    faces: FaceBits,
}

fn check_n(n: u8) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "ground set size {n} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    Ok(())
}

impl Complex {
    /// The empty family (no faces at all).
    pub fn empty(n: u8) -> Result<Complex> {
        check_n(n)?;
        Ok(Complex {
            n,
            faces: FaceBits::EMPTY,
        })
    }

    /// `P_{n,k}`: all subsets of size at most `k`, including the empty face.
    pub fn pnk(n: u8, k: u8) -> Result<Complex> {
        check_n(n)?;
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "face size bound k={k} exceeds ground set size n={n}"
            )));
        }
        let t = tables();
        let mut faces = FaceBits::EMPTY;
        for j in 0..=k as usize {
            faces = faces.or(&t.of_size[j]);
        }
        Ok(Complex {
            n,
            faces: faces.and(&FaceBits::prefix(1 << n)),
        })
    }

    /// The Boolean lattice `B_n`.
    pub fn boolean_lattice(n: u8) -> Result<Complex> {
        Complex::pnk(n, n)
    }

    /// Downward closure of a list of faces. An empty list gives the empty
    /// family; otherwise the empty face is always included.
    pub fn closure_of(maximal: &[Face], n: u8) -> Result<Complex> {
        check_n(n)?;
        let t = tables();
        let mut faces = FaceBits::EMPTY;
        for &f in maximal {
            if !f.fits(n) {
                return Err(Error::InvalidParameter(format!(
                    "face {f:?} has a vertex outside the ground set of size {n}"
                )));
            }
            faces = faces.or(&t.down[f.bits() as usize]);
        }
        Ok(Complex { n, faces })
    }

    /// Builds a complex from a characteristic vector, verifying closure.
    pub fn from_bits(n: u8, faces: FaceBits) -> Result<Complex> {
        check_n(n)?;
        if !faces.is_subset_of(&FaceBits::prefix(1 << n)) {
            return Err(Error::InvalidParameter(format!(
                "face set uses vertices outside the ground set of size {n}"
            )));
        }
        let c = Complex { n, faces };
        if !c.is_downward_closed() {
            return Err(Error::InvalidParameter(
                "face set is not downward closed".into(),
            ));
        }
        Ok(c)
    }

    /// Caller guarantees `faces` is downward closed and fits in `n`.
    pub(crate) fn from_bits_unchecked(n: u8, faces: FaceBits) -> Complex {
        debug_assert!(n <= MAX_VERTICES);
        Complex { n, faces }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn bits(&self) -> &FaceBits {
        &self.faces
    }

    pub fn face_count(&self) -> u32 {
        self.faces.count()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: Face) -> bool {
        f.fits(self.n) && self.faces.contains(f.bits())
    }

    pub fn has_empty_face(&self) -> bool {
        self.faces.contains(0)
    }

    /// Faces in ascending mask order.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().map(Face::from_bits)
    }

    /// Checks the closure predicate vertex by vertex: removing `v` from any
    /// face containing it must land inside the family.
    pub fn is_downward_closed(&self) -> bool {
        let t = tables();
        (0..self.n).all(|v| {
            self.faces
                .and(&t.with_vertex[v as usize])
                .shr(1 << v)
                .is_subset_of(&self.faces)
        })
    }

    /// Faces not strictly contained in another face, ascending by mask.
    pub fn maximal_faces(&self) -> Vec<Face> {
        self.maximal_bits().iter().map(Face::from_bits).collect()
    }

    pub(crate) fn maximal_bits(&self) -> FaceBits {
        let t = tables();
        let mut covered = FaceBits::EMPTY;
        for v in 0..self.n {
            let below = self.faces.and(&t.with_vertex[v as usize]).shr(1 << v);
            covered = covered.or(&below);
        }
        self.faces.and_not(&covered)
    }

    /// Chomp move: removes `x` together with every face containing it.
    pub fn chomp_move(&self, x: Face) -> Result<Complex> {
        if x.is_empty() {
            return Err(Error::IllegalMove("the empty face cannot be chosen".into()));
        }
        if !self.contains(x) {
            return Err(Error::IllegalMove(format!(
                "face {x:?} is not in the position"
            )));
        }
        Ok(self.chomp_unchecked(x.bits()))
    }

    #[inline]
    pub(crate) fn chomp_unchecked(&self, x: u8) -> Complex {
        Complex {
            n: self.n,
            faces: self.faces.and_not(&tables().up[x as usize]),
        }
    }

    /// Removes the single maximal face `m`.
    pub fn delete_element(&self, m: Face) -> Result<Complex> {
        if !self.contains(m) || !self.maximal_bits().contains(m.bits()) {
            return Err(Error::InvalidParameter(format!(
                "face {m:?} is not a maximal face of the complex"
            )));
        }
        let mut faces = self.faces;
        faces.remove(m.bits());
        Ok(Complex { n: self.n, faces })
    }

    /// Same faces over a different ground set size.
    pub fn embed(&self, n: u8) -> Result<Complex> {
        Complex::from_bits(n, self.faces)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, ", self.n)?;
        f.debug_list().entries(self.faces()).finish()?;
        write!(f, ")")
    }
}

/// `n=<n> [<maximal faces>]`, faces in digit notation.
impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, m) in self.maximal_faces().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn face(vs: &[u8]) -> Face {
        Face::from_vertices(vs.iter().copied()).unwrap()
    }

    fn naive_closed(c: &Complex) -> bool {
        c.faces().all(|f| {
            (0..=f.bits())
                .filter(|g| g & !f.bits() == 0)
                .all(|g| c.bits().contains(g))
        })
    }

    #[test]
    fn pnk_small_cases() {
        let b2 = Complex::pnk(2, 2).unwrap();
        let got: Vec<u8> = b2.faces().map(Face::bits).collect();
        assert_eq!(got, vec![0, 1, 2, 3]);
        for n in 0..=8 {
            let c = Complex::pnk(n, 0).unwrap();
            assert_eq!(c.faces().collect::<Vec<_>>(), vec![Face::EMPTY]);
        }
        // 1 + 7 + 21 + 35
        assert_eq!(Complex::pnk(7, 3).unwrap().face_count(), 64);
        assert_eq!(Complex::pnk(8, 8).unwrap().face_count(), 256);
        assert!(Complex::pnk(3, 4).is_err());
        assert!(Complex::pnk(9, 1).is_err());
    }

    #[test]
    fn closure_cases() {
        let c = Complex::closure_of(&[face(&[0, 1])], 2).unwrap();
        assert_eq!(c, Complex::pnk(2, 2).unwrap());
        let e = Complex::closure_of(&[], 3).unwrap();
        assert!(e.is_empty());
        assert_ne!(e, Complex::pnk(3, 0).unwrap());
        assert!(Complex::closure_of(&[face(&[3])], 3).is_err());

        let g9: Vec<Face> = [
            "01", "02", "03", "04", "05", "06", "12", "13", "14", "15", "23", "24", "35", "46",
        ]
        .iter()
        .map(|s| face(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()))
        .collect();
        let c = Complex::closure_of(&g9, 7).unwrap();
        assert_eq!(c.maximal_faces().len(), 14);
        assert_eq!(c.face_count(), 22);
    }

    #[test]
    fn maximal_face_cases() {
        assert_eq!(
            Complex::pnk(2, 2).unwrap().maximal_faces(),
            vec![face(&[0, 1])]
        );
        assert_eq!(
            Complex::pnk(0, 0).unwrap().maximal_faces(),
            vec![Face::EMPTY]
        );
        assert_eq!(
            Complex::pnk(3, 2).unwrap().maximal_faces(),
            vec![face(&[0, 1]), face(&[0, 2]), face(&[1, 2])]
        );
        assert!(Complex::empty(3).unwrap().maximal_faces().is_empty());
    }

    #[test]
    fn chomp_cases() {
        let b2 = Complex::pnk(2, 2).unwrap();
        assert_eq!(
            b2.chomp_move(face(&[0, 1])).unwrap(),
            Complex::pnk(2, 1).unwrap()
        );
        let got: Vec<u8> = b2
            .chomp_move(face(&[0]))
            .unwrap()
            .faces()
            .map(Face::bits)
            .collect();
        assert_eq!(got, vec![0, 2]);
        assert!(matches!(
            b2.chomp_move(Face::EMPTY),
            Err(Error::IllegalMove(_))
        ));
        let a = Complex::pnk(2, 1).unwrap();
        assert!(matches!(
            a.chomp_move(face(&[0, 1])),
            Err(Error::IllegalMove(_))
        ));
    }

    #[test]
    fn delete_cases() {
        let z = Complex::pnk(3, 0).unwrap();
        assert!(z.delete_element(Face::EMPTY).unwrap().is_empty());
        let b2 = Complex::pnk(2, 2).unwrap();
        assert_eq!(
            b2.delete_element(face(&[0, 1])).unwrap(),
            Complex::pnk(2, 1).unwrap()
        );
        let c = Complex::pnk(3, 2)
            .unwrap()
            .delete_element(face(&[1, 2]))
            .unwrap();
        let got: Vec<u8> = c.faces().map(Face::bits).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 4, 5]);
        assert!(b2.delete_element(face(&[0])).is_err());
        assert!(b2.delete_element(face(&[2])).is_err());
    }

    #[test]
    fn from_bits_validates() {
        let bad: FaceBits = [0u8, 3].into_iter().collect();
        assert!(Complex::from_bits(2, bad).is_err());
        let outside: FaceBits = [0u8, 4].into_iter().collect();
        assert!(Complex::from_bits(2, outside).is_err());
        assert!(Complex::from_bits(3, outside).is_ok());
    }

    fn arb_complex() -> impl Strategy<Value = Complex> {
        (0u8..=6).prop_flat_map(|n| {
            let top = (1u16 << n) as u8;
            let mask = if n == 8 { 255 } else { top.wrapping_sub(1) };
            prop::collection::vec(any::<u8>(), 0..6).prop_map(move |fs| {
                let faces: Vec<Face> = fs.into_iter().map(|m| Face::from_bits(m & mask)).collect();
                Complex::closure_of(&faces, n).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_round_trips_through_maximal_faces(c in arb_complex()) {
            prop_assert!(naive_closed(&c));
            prop_assert!(c.is_downward_closed());
            prop_assert_eq!(Complex::closure_of(&c.maximal_faces(), c.n()).unwrap(), c);
        }

        #[test]
        fn chomp_removes_exactly_the_upset(c in arb_complex(), pick in any::<prop::sample::Index>()) {
            let moves: Vec<Face> = c.faces().filter(|f| !f.is_empty()).collect();
            prop_assume!(!moves.is_empty());
            let x = moves[pick.index(moves.len())];
            let d = c.chomp_move(x).unwrap();
            prop_assert!(naive_closed(&d));
            prop_assert!(d.has_empty_face());
            prop_assert!(d.face_count() < c.face_count());
            for f in c.faces() {
                prop_assert_eq!(d.contains(f), !x.is_subset_of(f));
            }
            for f in d.faces() {
                prop_assert!(c.contains(f));
            }
        }

        #[test]
        fn deleting_a_maximal_face_keeps_closure(c in arb_complex(), pick in any::<prop::sample::Index>()) {
            let max = c.maximal_faces();
            prop_assume!(!max.is_empty());
            let m = max[pick.index(max.len())];
            let d = c.delete_element(m).unwrap();
            prop_assert!(naive_closed(&d));
            prop_assert_eq!(d.face_count() + 1, c.face_count());
        }
    }
}
