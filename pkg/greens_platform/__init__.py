# Green's operator engine for generalized boundary problems
