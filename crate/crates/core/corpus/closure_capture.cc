def adder : Nat -> Nat -> Nat := fun (n : Nat) => fun (m : Nat) => add n m;
main (fun (g : Nat -> Nat) => g (g 1)) (adder 10);
