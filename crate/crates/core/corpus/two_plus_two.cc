def plus : Nat -> Nat -> Nat := fun (m n : Nat) => add m n;
main plus 2 2;
