from ambitrace.cli import main

main()
