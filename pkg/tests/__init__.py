# taxelsim tests
