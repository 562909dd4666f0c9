-- Computation inside types.
def Endo : Type 0 -> Type 0 := fun (X : Type 0) => X -> X;
axiom e : Endo Nat;
main (fun (h : Endo Nat) => h 4) e;
