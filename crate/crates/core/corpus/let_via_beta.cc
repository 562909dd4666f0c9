-- let x = 1 + 2 in x + x
main (fun (x : Nat) => add x x) (add 1 2);
