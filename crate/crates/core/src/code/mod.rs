//! One-time pad, prefix-free codebooks and transcripts.

mod bits;
mod codebook;
mod pad;
mod transcript;

pub use bits::Bitstring;
pub use codebook::{
    entropy_codebook, fixed_length_codebook, verify_prefix_free, CodeMode, Codebook,
};
pub use pad::{otp_decrypt, otp_encrypt, PadKey, PaddedSecret};
pub use transcript::{Slot, SlotLabel, Transcript};
