use crate::prob::{ratio, Alphabet, JointDist};

/// `X` uniform; `P(Y | X=0) = (1/2, 1/2)`, `P(Y | X=1) = (1/4, 3/4)`.
pub(crate) fn designed() -> JointDist {
    JointDist::new(
        vec![Alphabet::new("X", 2).unwrap(), Alphabet::new("Y", 2).unwrap()],
        [
            (vec![0, 0], ratio(1, 4)),
            (vec![0, 1], ratio(1, 4)),
            (vec![1, 0], ratio(1, 8)),
            (vec![1, 1], ratio(3, 8)),
        ],
    )
    .unwrap()
}
