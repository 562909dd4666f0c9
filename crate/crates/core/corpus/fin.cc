-- Bounded naturals as an indexed family.
axiom Fin : Nat -> Type 0;
axiom fz : (n : Nat) -> Fin (add n 1);
axiom fs : (n : Nat) -> Fin n -> Fin (add n 1);
def lift : (n : Nat) -> Fin n -> Fin (add n 1) := fun (n : Nat) (i : Fin n) => fs n i;
main lift 2 (fs 1 (fz 0));
