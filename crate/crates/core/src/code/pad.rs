use serde::Serialize;

use crate::error::{Error, Result};

/// Shared secret key: a symbol of `{0, .., modulus-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadKey {
    value: usize,
    modulus: usize,
}

impl PadKey {
    pub fn new(value: usize, modulus: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Config("key modulus must be positive".into()));
        }
        if value >= modulus {
            return Err(Error::SymbolOutOfRange {
                symbol: value,
                size: modulus,
            });
        }
        Ok(PadKey { value, modulus })
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Every key of the given modulus, in ascending order.
    pub fn all(modulus: usize) -> impl Iterator<Item = PadKey> {
        (0..modulus).map(move |value| PadKey { value, modulus })
    }
}

/// `X + W mod T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PaddedSecret {
    value: usize,
    modulus: usize,
}

impl PaddedSecret {
    pub fn new(value: usize, modulus: usize) -> Result<Self> {
        PadKey::new(value, modulus).map(|k| PaddedSecret {
            value: k.value,
            modulus: k.modulus,
        })
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }
}

pub fn otp_encrypt(x: usize, key: &PadKey) -> Result<PaddedSecret> {
    if x >= key.modulus {
        return Err(Error::SymbolOutOfRange {
            symbol: x,
            size: key.modulus,
        });
    }
    Ok(PaddedSecret {
        value: (x + key.value) % key.modulus,
        modulus: key.modulus,
    })
}

pub fn otp_decrypt(xt: &PaddedSecret, key: &PadKey) -> Result<usize> {
    if xt.modulus != key.modulus {
        return Err(Error::Config(format!(
            "padded symbol has modulus {}, key has {}",
            xt.modulus, key.modulus
        )));
    }
    Ok((xt.value + key.modulus - key.value) % key.modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{ratio, Alphabet, JointDist};

    #[test]
    fn encrypt_examples() {
        let k = PadKey::new(0, 4).unwrap();
        assert_eq!(otp_encrypt(0, &k).unwrap().value(), 0);
        let k = PadKey::new(3, 4).unwrap();
        assert_eq!(otp_encrypt(2, &k).unwrap().value(), 1);
        assert!(otp_encrypt(4, &k).is_err());
    }

    #[test]
    fn decrypt_examples() {
        let k = PadKey::new(3, 4).unwrap();
        assert_eq!(otp_decrypt(&PaddedSecret::new(1, 4).unwrap(), &k).unwrap(), 2);
        let zero = PadKey::new(0, 4).unwrap();
        for x in 0..4 {
            assert_eq!(otp_decrypt(&PaddedSecret::new(x, 4).unwrap(), &zero).unwrap(), x);
        }
        let other = PadKey::new(0, 5).unwrap();
        assert!(otp_decrypt(&PaddedSecret::new(1, 4).unwrap(), &other).is_err());
    }

    #[test]
    fn round_trip_mod_five() {
        for key in PadKey::all(5) {
            for x in 0..5 {
                let xt = otp_encrypt(x, &key).unwrap();
                assert_eq!(otp_decrypt(&xt, &key).unwrap(), x);
            }
        }
    }

    #[test]
    fn padded_symbol_is_uniform_and_independent_mod_three() {
        // Skewed prior on X, uniform key.
        let px = [ratio(1, 2), ratio(1, 3), ratio(1, 6)];
        let entries = (0..3).flat_map(|x| {
            let px = px[x].clone();
            PadKey::all(3).map(move |k| {
                let xt = otp_encrypt(x, &k).unwrap().value();
                (vec![x, xt], &px * ratio(1, 3))
            })
        });
        let vars = vec![Alphabet::new("X", 3).unwrap(), Alphabet::new("Xt", 3).unwrap()];
        let d = JointDist::new(vars, entries).unwrap();
        assert!(d.exact_independent(&["X"], &["Xt"]).unwrap());
        let m = d.marginal_vector("Xt").unwrap();
        assert!(m.iter().all(|p| *p == ratio(1, 3)));
    }
}
