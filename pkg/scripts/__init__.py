# McKay degree toolkit scripts
