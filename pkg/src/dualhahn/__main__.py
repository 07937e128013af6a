from dualhahn.cli import main

raise SystemExit(main())
