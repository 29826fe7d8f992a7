# taxelsim utils
