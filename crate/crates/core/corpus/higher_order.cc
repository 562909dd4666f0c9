main (fun (h : (Nat -> Nat) -> Nat) => h (fun (x : Nat) => add x x)) (fun (k : Nat -> Nat) => k 5);
