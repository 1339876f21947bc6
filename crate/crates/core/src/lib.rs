pub mod bicayley;
pub mod graphalg;
pub mod pgroup;
pub mod residue;
pub mod verify;
