"""Initialize core package: expressions, oracle, derivatives, automata"""
