"""Services package for the S_n McKay degree toolkit."""
